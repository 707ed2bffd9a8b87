// Copyright 2026 The pstnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pstnet/errors.hpp"
#include "pstnet/group.hpp"
#include "pstnet/linalg.hpp"
#include "pstnet/scheme.hpp"

namespace pstnet {

enum class TableSource { analytic, fourier, numeric };

inline std::string to_string(TableSource s) {
  switch (s) {
    case TableSource::analytic: return "analytic";
    case TableSource::fourier: return "fourier";
    case TableSource::numeric: return "numeric";
  }
  return "analytic";
}

/// Spectral data indexed by *mode*. For group schemes a mode is an
/// irreducible character; for the 2m-cycle it is a Fourier frequency
/// l = 0..2m-1. `values(l, i)` is the character of mode l averaged over
/// class i (for group schemes, simply chi_l(alpha_i)). `fold` maps each mode
/// onto its joint eigenspace of the Bose-Mesner algebra; for groups the map
/// is the identity, for the cycle modes l and 2m-l share an eigenspace.
struct CharacterTable {
  TableSource source = TableSource::analytic;
  int group_order = 0;
  std::vector<int> dims;
  CMatrix values;  // modes x classes
  std::vector<std::string> labels;
  std::vector<int> fold;
  int num_eigenspaces = 0;

  int num_modes() const { return static_cast<int>(dims.size()); }
  int num_classes() const { return static_cast<int>(values.cols()); }

  /// First mode mapped to each eigenspace.
  std::vector<int> eigenspace_leaders() const {
    std::vector<int> lead(num_eigenspaces, -1);
    for (int l = 0; l < num_modes(); ++l)
      if (lead[fold[l]] < 0) lead[fold[l]] = l;
    return lead;
  }
};

namespace detail {

struct Irrep {
  std::string label;
  int dim;
  std::function<cplx(NormalForm)> chi;
};

inline cplx sign(int e) { return (e % 2 == 0) ? cplx{1.0, 0.0} : cplx{-1.0, 0.0}; }

inline std::vector<Irrep> dihedral_irreps(int n) {
  const int m = n / 2;
  std::vector<Irrep> out{
      {"chi0", 1, [](NormalForm) { return cplx{1.0, 0.0}; }},
      {"chi1", 1, [](NormalForm x) { return sign(x[1]); }},
      {"chi2", 1, [](NormalForm x) { return sign(x[0]); }},
      {"chi3", 1, [](NormalForm x) { return sign(x[0] + x[1]); }},
  };
  for (int j = 1; j <= m - 1; ++j)
    out.push_back({"psi" + std::to_string(j), 2, [j, n](NormalForm x) {
                     if (x[1] != 0) return cplx{0.0, 0.0};
                     return cplx{2.0 * cos_pi(2LL * j * x[0], n), 0.0};
                   }});
  return out;
}

inline std::vector<Irrep> clifford_irreps(int n) {
  std::vector<Irrep> out;
  for (int k = 0; k < (1 << n); ++k)
    out.push_back({"chi" + std::to_string(k), 1, [k](NormalForm x) {
                     return sign(std::popcount(static_cast<unsigned>(x[1] & k)));
                   }});
  const int big = 1 << (n / 2);
  out.push_back({"Delta", big, [big](NormalForm x) {
                   if (x[1] != 0) return cplx{0.0, 0.0};
                   return cplx{static_cast<double>(x[0] * big), 0.0};
                 }});
  return out;
}

inline std::vector<Irrep> u6n_irreps(int n) {
  std::vector<Irrep> out;
  for (int j = 0; j < 2 * n; ++j)
    out.push_back({"chi" + std::to_string(j), 1,
                   [j, n](NormalForm x) { return unit_root(static_cast<std::int64_t>(j) * x[0], 2 * n); }});
  for (int k = 0; k < n; ++k)
    out.push_back({"psi" + std::to_string(k), 2, [k, n](NormalForm x) {
                     if (x[0] % 2 != 0) return cplx{0.0, 0.0};
                     const cplx w = unit_root(static_cast<std::int64_t>(k) * (x[0] / 2), n);
                     return x[1] == 0 ? 2.0 * w : -w;
                   }});
  return out;
}

inline std::vector<Irrep> v8n_irreps(int n) {
  std::vector<Irrep> out{
      {"chi0", 1, [](NormalForm) { return cplx{1.0, 0.0}; }},
      {"chi1", 1, [](NormalForm x) { return sign(x[1]); }},
      {"chi2", 1, [](NormalForm x) { return sign(x[0]); }},
      {"chi3", 1, [](NormalForm x) { return sign(x[0] + x[1]); }},
  };
  // Induced from the index-2 abelian subgroup <a, b^2>; conjugation by b
  // sends a^i b^{2e} to a^{-i} b^{2i+2e}.
  for (int j = 0; j < n; ++j)
    out.push_back({"psi" + std::to_string(j), 2, [j, n](NormalForm x) {
                     if (x[1] % 2 != 0) return cplx{0.0, 0.0};
                     const std::int64_t p = static_cast<std::int64_t>(j) * x[0];
                     const cplx v = unit_root(p, n) + sign(x[0]) * unit_root(-p, n);
                     return x[1] == 2 ? -v : v;
                   }});
  for (int j = 1; j <= n - 1; ++j)
    out.push_back({"phi" + std::to_string(j), 2, [j, n](NormalForm x) {
                     if (x[1] % 2 != 0) return cplx{0.0, 0.0};
                     return cplx{2.0 * cos_pi(static_cast<std::int64_t>(j) * x[0], n), 0.0};
                   }});
  return out;
}

}  // namespace detail

/// Closed-form character table of a group family, with irreps in the
/// family's conventional order and classes in canonical order.
inline CharacterTable character_table(const FiniteGroup& g, const ConjugacyClasses& c) {
  std::vector<detail::Irrep> irreps;
  switch (g.family) {
    case Family::dihedral_even: irreps = detail::dihedral_irreps(g.param); break;
    case Family::u6n: irreps = detail::u6n_irreps(g.param); break;
    case Family::v8n:
      if (g.param % 2 == 0) throw ParameterError("v8n character table requires odd n");
      irreps = detail::v8n_irreps(g.param);
      break;
    case Family::clifford:
      if (g.param % 2 != 0)
        throw UnsupportedAnalyticError("clifford n = " + std::to_string(g.param) +
                                       " is odd; no closed-form table, use the numeric backend");
      irreps = detail::clifford_irreps(g.param);
      break;
    case Family::cyclic:
      throw ParameterError("the cyclic family uses the cycle distance scheme; call fourier_table(m)");
    case Family::custom:
      throw UnsupportedAnalyticError("custom groups have no closed-form table; use the numeric backend");
  }
  CharacterTable t;
  t.source = TableSource::analytic;
  t.group_order = g.order;
  const int k = static_cast<int>(irreps.size());
  if (k != c.count())
    throw ConsistencyError("irrep count " + std::to_string(k) + " differs from class count " +
                           std::to_string(c.count()));
  t.values = CMatrix::Zero(k, c.count());
  for (int l = 0; l < k; ++l) {
    t.dims.push_back(irreps[l].dim);
    t.labels.push_back(irreps[l].label);
    t.fold.push_back(l);
    for (int i = 0; i < c.count(); ++i) {
      const cplx v = irreps[l].chi(g.normal_forms[c.representatives[i]]);
      for (int x : c.classes[i])
        if (std::abs(irreps[l].chi(g.normal_forms[x]) - v) > 1e-12)
          throw ConsistencyError(irreps[l].label + " is not a class function on class " + std::to_string(i));
      t.values(l, i) = v;
    }
  }
  t.num_eigenspaces = k;
  return t;
}

/// Fourier modes of the 2m-cycle packaged as a table over the m+1 distance
/// classes: values(l, k) = cos(pi k l / m) is the class average of
/// omega^{l x}; the eigenvalue of A_k on mode l is valency_k * values(l, k).
inline CharacterTable fourier_table(int m) {
  if (m < 2) throw ParameterError("cycle distance scheme requires m >= 2, got m = " + std::to_string(m));
  CharacterTable t;
  t.source = TableSource::fourier;
  t.group_order = 2 * m;
  t.values = CMatrix::Zero(2 * m, m + 1);
  for (int l = 0; l < 2 * m; ++l) {
    t.dims.push_back(1);
    t.labels.push_back("mode" + std::to_string(l));
    t.fold.push_back(std::min(l, 2 * m - l));
    for (int k = 0; k <= m; ++k) t.values(l, k) = cos_pi(static_cast<std::int64_t>(k) * l, m);
  }
  t.num_eigenspaces = m + 1;
  return t;
}

/// Convenience entry point keyed by family; the cyclic parameter is the
/// cycle length 2m.
inline CharacterTable character_table(Family f, int n) {
  if (f == Family::cyclic) {
    if (n % 2 != 0) throw ParameterError("cycle scheme requires an even cycle length, got " + std::to_string(n));
    return fourier_table(n / 2);
  }
  const FiniteGroup g = build_group(f, n);
  return character_table(g, conjugacy_classes(g));
}

/// Maximum deviation of the weighted row-orthogonality relations
/// sum_i kappa_i chi_k(alpha_i) conj(chi_k'(alpha_i)) = |G| delta_kk'.
inline double row_orthogonality_defect(const CharacterTable& t, const std::vector<int>& valencies) {
  double worst = 0.0;
  for (int a = 0; a < t.num_modes(); ++a)
    for (int b = 0; b < t.num_modes(); ++b) {
      cplx s = 0.0;
      for (int i = 0; i < t.num_classes(); ++i) s += double(valencies[i]) * t.values(a, i) * std::conj(t.values(b, i));
      worst = std::max(worst, std::abs(s - (a == b ? double(t.group_order) : 0.0)));
    }
  return worst;
}

struct EigenMatrices {
  int N = 0;
  CMatrix P;  // P(i, j): eigenvalue of A_i on eigenspace j
  CMatrix Q;  // E_j = (1/N) sum_i Q(j, i) A_i
  std::vector<int> multiplicities;
  std::vector<int> valencies;

  int size() const { return static_cast<int>(P.rows()); }
};

/// P_ij = kappa_i chi_j(alpha_i) / d_j and Q_ji = sum over modes l in j of
/// d_l conj(chi_l(alpha_i)); throws ConsistencyError unless PQ = QP = N I.
inline EigenMatrices eigen_matrices(const CharacterTable& t, const std::vector<int>& valencies,
                                    double tol = 1e-10) {
  const int d1 = t.num_eigenspaces;
  if (static_cast<int>(valencies.size()) != t.num_classes() || t.num_classes() != d1)
    throw ConsistencyError("table has " + std::to_string(t.num_classes()) + " classes and " +
                           std::to_string(d1) + " eigenspaces but the scheme has " +
                           std::to_string(valencies.size()) + " relations");
  EigenMatrices em;
  em.N = t.group_order;
  em.valencies = valencies;
  em.P = CMatrix::Zero(d1, d1);
  em.Q = CMatrix::Zero(d1, d1);
  em.multiplicities.assign(d1, 0);
  const auto lead = t.eigenspace_leaders();
  for (int j = 0; j < d1; ++j)
    for (int i = 0; i < d1; ++i) em.P(i, j) = double(valencies[i]) * t.values(lead[j], i) / double(t.dims[lead[j]]);
  for (int l = 0; l < t.num_modes(); ++l) {
    const int j = t.fold[l];
    em.multiplicities[j] += t.dims[l] * t.dims[l];
    for (int i = 0; i < d1; ++i) {
      if (std::abs(t.values(l, i) / double(t.dims[l]) - t.values(lead[j], i) / double(t.dims[lead[j]])) > tol)
        throw ConsistencyError("modes " + std::to_string(l) + " and " + std::to_string(lead[j]) +
                               " are folded together but act differently on class " + std::to_string(i));
      em.Q(j, i) += double(t.dims[l]) * std::conj(t.values(l, i));
    }
  }
  const CMatrix target = double(em.N) * CMatrix::Identity(d1, d1);
  const double pq = max_abs(em.P * em.Q - target);
  const double qp = max_abs(em.Q * em.P - target);
  if (pq > tol || qp > tol)
    throw ConsistencyError("PQ = QP = N I fails (deviation " + std::to_string(std::max(pq, qp)) +
                           "): table and classes disagree");
  return em;
}

struct IdempotentSet {
  std::vector<CMatrix> E;  // one projector per joint eigenspace

  int size() const { return static_cast<int>(E.size()); }
};

struct IdempotentDefects {
  double algebra = 0.0;        // max deviation of E_j from a constant on each relation
  double orthogonality = 0.0;  // max |E_i E_j - delta_ij E_i|
  double completeness = 0.0;   // max |sum E - I|
  double eigen_action = 0.0;   // max |A_i E_j - P_ij E_j|
  double worst() const { return std::max({algebra, orthogonality, completeness, eigen_action}); }
};

/// Every projector must lie in the Bose-Mesner algebra, i.e. be constant on
/// each relation. Products of algebra elements stay in the algebra and every
/// relation meets column 0, so the remaining identities are checked on that
/// column: O(N^2) per pair instead of O(N^3).
inline IdempotentDefects idempotent_defects(const IdempotentSet& ids, const AssociationScheme& s,
                                            const CMatrix& P) {
  IdempotentDefects d;
  const int n = s.N;
  std::vector<int> ref(s.num_classes(), -1);
  for (int y = 0; y < n; ++y)
    if (ref[s.relation_of(y, 0)] < 0) ref[s.relation_of(y, 0)] = y;
  for (const auto& e : ids.E)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        d.algebra = std::max(d.algebra, std::abs(e(y, x) - e(ref[s.relation_of(y, x)], 0)));

  CVector sum = CVector::Zero(n);
  for (int i = 0; i < ids.size(); ++i) {
    sum += ids.E[i].col(0);
    for (int j = 0; j < ids.size(); ++j) {
      CVector prod = ids.E[i] * ids.E[j].col(0);
      if (i == j) prod -= ids.E[i].col(0);
      d.orthogonality = std::max(d.orthogonality, prod.cwiseAbs().maxCoeff());
    }
  }
  d.completeness = (sum - CVector::Unit(n, 0)).cwiseAbs().maxCoeff();
  for (int i = 0; i < s.num_classes(); ++i) {
    const CMatrix a = s.adjacency[i].cast<cplx>();
    for (int j = 0; j < ids.size(); ++j)
      d.eigen_action = std::max(d.eigen_action, (a * ids.E[j].col(0) - P(i, j) * ids.E[j].col(0)).cwiseAbs().maxCoeff());
  }
  return d;
}

/// Central idempotents E_k = (d_k / |G|) sum_alpha chi_k(alpha^-1) M(alpha)
/// of a group scheme, folded per eigenspace.
inline IdempotentSet idempotents(const CharacterTable& t, const FiniteGroup& g, const ConjugacyClasses& c) {
  if (t.source == TableSource::fourier)
    throw ParameterError("group idempotents need a group character table; the cycle uses fourier_projectors");
  const int n = g.order;
  IdempotentSet out;
  out.E.assign(t.num_eigenspaces, CMatrix::Zero(n, n));
  for (int l = 0; l < t.num_modes(); ++l) {
    const double scale = double(t.dims[l]) / double(n);
    for (int alpha = 0; alpha < n; ++alpha) {
      const cplx coeff = scale * t.values(l, c.class_of[g.inv(alpha)]);
      for (int x = 0; x < n; ++x) out.E[t.fold[l]](g.mul(alpha, x), x) += coeff;
    }
  }
  return out;
}

/// Fourier projectors of the 2m-cycle, E_l[y][x] = omega^{l (y - x)} / 2m,
/// folded so that modes l and 2m - l share one projector.
inline IdempotentSet fourier_projectors(const CharacterTable& t) {
  const int n = t.group_order;
  IdempotentSet out;
  out.E.assign(t.num_eigenspaces, CMatrix::Zero(n, n));
  for (int l = 0; l < t.num_modes(); ++l)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        out.E[t.fold[l]](y, x) += unit_root(static_cast<std::int64_t>(l) * (y - x), n) / double(n);
  return out;
}

/// Throws ConsistencyError if the idempotent identities fail beyond tol.
inline void check_idempotents(const IdempotentSet& ids, const AssociationScheme& s, const CMatrix& P,
                              double tol = 1e-10) {
  const auto d = idempotent_defects(ids, s, P);
  if (d.worst() > tol)
    throw ConsistencyError("idempotent identities fail: algebra membership " + std::to_string(d.algebra) +
                           ", orthogonality " + std::to_string(d.orthogonality) +
                           ", completeness " + std::to_string(d.completeness) + ", A_i E_j = P_ij E_j " +
                           std::to_string(d.eigen_action));
}

/// Number of singular values above tol.
inline int numeric_rank(const CMatrix& m, double tol = 1e-8) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++r;
  return r;
}

}  // namespace pstnet
