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

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pstnet/characters.hpp"
#include "pstnet/errors.hpp"
#include "pstnet/group.hpp"
#include "pstnet/linalg.hpp"
#include "pstnet/scheme.hpp"

namespace pstnet {

/// PST target: a singleton (hence central) class and its vertex.
struct TargetSpec {
  int target_class = 0;
  int target_vertex = 0;
};

/// Validates that class `cls` can host a PST target. With a group at hand
/// the element is also checked against the center.
inline TargetSpec make_target(const AssociationScheme& s, int cls, const FiniteGroup* g = nullptr) {
  if (cls < 0 || cls >= s.num_classes())
    throw ParameterError("target class " + std::to_string(cls) + " out of range [0, " +
                         std::to_string(s.num_classes()) + ")");
  if (s.valencies[cls] != 1)
    throw CentralityError("target class " + std::to_string(cls) + " (" + s.class_label(cls) + ") has " +
                          std::to_string(s.valencies[cls]) + " elements; only central singletons qualify");
  const int v = s.classes[cls].front();
  if (g != nullptr) {
    const auto z = center(*g);
    if (std::find(z.begin(), z.end(), v) == z.end())
      throw CentralityError("target " + g->labels[v] + " is not in the center");
  }
  return {cls, v};
}

/// Per-mode phases phi_l = arg(d_l / conj(chi_l(alpha_m))) in (-pi, pi].
struct PhasePattern {
  std::vector<double> phi;
  int target_class = 0;
  TableSource source = TableSource::analytic;
  int group_order = 0;

  int size() const { return static_cast<int>(phi.size()); }
};

inline PhasePattern phase_pattern(const CharacterTable& t, const TargetSpec& spec, double tol = 1e-12) {
  PhasePattern p;
  p.target_class = spec.target_class;
  p.source = t.source;
  p.group_order = t.group_order;
  for (int l = 0; l < t.num_modes(); ++l) {
    const cplx chi = t.values(l, spec.target_class);
    if (std::abs(chi) < 1e-300)
      throw CentralityError("character " + t.labels[l] + " vanishes on the target class");
    const cplx ratio = double(t.dims[l]) / std::conj(chi);
    if (std::abs(std::abs(ratio) - 1.0) > tol)
      throw ConsistencyError("|d / conj(chi)| = " + std::to_string(std::abs(ratio)) + " for " + t.labels[l] +
                             "; the target does not act as a scalar");
    p.phi.push_back(principal_arg(ratio));
  }
  return p;
}

enum class Strategy { minimal, paper_cyclic, custom };

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::minimal: return "minimal";
    case Strategy::paper_cyclic: return "paper-cyclic";
    case Strategy::custom: return "custom";
  }
  return "minimal";
}

inline Strategy parse_strategy(const std::string& s) {
  if (s == "minimal") return Strategy::minimal;
  if (s == "paper-cyclic") return Strategy::paper_cyclic;
  if (s == "custom") return Strategy::custom;
  throw StrategyError("unknown strategy '" + s + "'");
}

struct TildeCouplings {
  std::vector<long long> n_choices;
  std::vector<double> tilde;  // per mode, t0 * tilde_l = -theta - phi_l + 2 pi n_l
};

/// Mode couplings satisfying exp(-i(t0 J~_l + theta)) = d_l / conj(chi_l(alpha_m)).
/// `minimal` picks the n_l of smallest |J~_l| (ties go to the nonnegative
/// value); `paper-cyclic` reproduces t0 J~_l = -pi l - theta on the cycle
/// (l folded to min(l, 2m - l)); `custom` takes the integers verbatim.
inline TildeCouplings tilde_couplings(const PhasePattern& p, double theta, double t0, Strategy strategy,
                                      const std::vector<long long>& custom = {}) {
  if (!(t0 > 0.0)) throw ParameterError("t0 must be positive");
  TildeCouplings out;
  const int modes = p.size();
  switch (strategy) {
    case Strategy::minimal:
      for (int l = 0; l < modes; ++l) {
        const double x = -theta - p.phi[l];
        long long n = std::llround(-x / (2.0 * kPi));
        double y = x + 2.0 * kPi * double(n);
        if (y < -kPi + 1e-12) {
          ++n;
          y += 2.0 * kPi;
        }
        out.n_choices.push_back(n);
      }
      break;
    case Strategy::paper_cyclic: {
      if (p.source != TableSource::fourier)
        throw StrategyError("paper-cyclic applies only to the cycle family");
      for (int l = 0; l < modes; ++l) {
        const int folded = std::min(l, p.group_order - l);
        const double real_n = (-kPi * folded + p.phi[l]) / (2.0 * kPi);
        const long long n = std::llround(real_n);
        if (std::abs(real_n - double(n)) > 1e-9)
          throw StrategyError("paper-cyclic needs the antipodal target a^m");
        out.n_choices.push_back(n);
      }
      break;
    }
    case Strategy::custom:
      if (static_cast<int>(custom.size()) != modes)
        throw ParameterError("custom n-list has " + std::to_string(custom.size()) + " entries, expected " +
                             std::to_string(modes));
      out.n_choices = custom;
      break;
  }
  for (int l = 0; l < modes; ++l)
    out.tilde.push_back((-theta - p.phi[l] + 2.0 * kPi * double(out.n_choices[l])) / t0);
  return out;
}

/// J_i = (1/N) sum_l d_l conj(chi_l(alpha_i)) J~_l, then checks that
/// J~ = P^T J reproduces every mode within tol.
inline std::vector<cplx> class_couplings(const std::vector<double>& tilde, const CharacterTable& t,
                                         const EigenMatrices& em, double tol = 1e-10) {
  if (static_cast<int>(tilde.size()) != t.num_modes())
    throw ParameterError("J~ has " + std::to_string(tilde.size()) + " entries, expected " +
                         std::to_string(t.num_modes()));
  const int d1 = t.num_classes();
  std::vector<cplx> j(d1, 0.0);
  for (int i = 0; i < d1; ++i) {
    for (int l = 0; l < t.num_modes(); ++l) j[i] += double(t.dims[l]) * std::conj(t.values(l, i)) * tilde[l];
    j[i] /= double(t.group_order);
  }
  for (int l = 0; l < t.num_modes(); ++l) {
    cplx back = 0.0;
    for (int i = 0; i < d1; ++i) back += j[i] * em.P(i, t.fold[l]);
    if (std::abs(back - tilde[l]) > tol)
      throw LinearSystemError("P^T J misses J~ on mode " + std::to_string(l) + " by " +
                              std::to_string(std::abs(back - tilde[l])));
  }
  return j;
}

/// Eigenvalue of H = sum J_i A_i on each joint eigenspace: J~ = P^T J.
inline std::vector<cplx> folded_tilde(const std::vector<cplx>& couplings, const EigenMatrices& em) {
  std::vector<cplx> out(em.size(), 0.0);
  for (int j = 0; j < em.size(); ++j)
    for (int i = 0; i < em.size(); ++i) out[j] += couplings[i] * em.P(i, j);
  return out;
}

struct CouplingPlan {
  double theta = 0.0;
  double t0 = 1.0;
  Strategy strategy = Strategy::minimal;
  TargetSpec target;
  int source_vertex = 0;
  std::vector<double> phi;
  std::vector<long long> n_choices;
  std::vector<double> tilde;
  std::vector<cplx> couplings;
  std::vector<int> fold;
};

struct PlanDefects {
  double phase = 0.0;        // max |exp(-i(t0 J~ + theta)) - d / conj(chi)|
  double hermiticity = 0.0;  // max |J_i' - conj(J_i)|
  double round_trip = 0.0;   // max |P^T J - J~|
};

inline PlanDefects plan_defects(const CouplingPlan& plan, const EigenMatrices& em,
                                const std::vector<int>& pairing) {
  PlanDefects d;
  for (std::size_t l = 0; l < plan.tilde.size(); ++l) {
    const cplx lhs = std::exp(cplx{0.0, -(plan.t0 * plan.tilde[l] + plan.theta)});
    d.phase = std::max(d.phase, std::abs(lhs - std::polar(1.0, plan.phi[l])));
  }
  for (std::size_t i = 0; i < plan.couplings.size(); ++i)
    d.hermiticity = std::max(d.hermiticity, std::abs(plan.couplings[pairing[i]] - std::conj(plan.couplings[i])));
  const auto back = folded_tilde(plan.couplings, em);
  for (std::size_t l = 0; l < plan.tilde.size(); ++l)
    d.round_trip = std::max(d.round_trip, std::abs(back[plan.fold[l]] - plan.tilde[l]));
  return d;
}

/// Full solver: phases, mode couplings, class couplings, invariant checks.
inline CouplingPlan solve_plan(const AssociationScheme& s, const CharacterTable& t, const EigenMatrices& em,
                               const TargetSpec& target, double theta = 0.0, double t0 = 1.0,
                               Strategy strategy = Strategy::minimal,
                               const std::vector<long long>& custom = {}) {
  CouplingPlan plan;
  plan.theta = theta;
  plan.t0 = t0;
  plan.strategy = strategy;
  plan.target = target;
  plan.source_vertex = 0;
  plan.fold = t.fold;
  const PhasePattern p = phase_pattern(t, target);
  plan.phi = p.phi;
  const TildeCouplings tc = tilde_couplings(p, theta, t0, strategy, custom);
  plan.n_choices = tc.n_choices;
  plan.tilde = tc.tilde;
  plan.couplings = class_couplings(plan.tilde, t, em);
  const auto d = plan_defects(plan, em, s.inverse_pairing);
  if (d.phase > 1e-12) throw ConsistencyError("phase constraint violated by " + std::to_string(d.phase));
  if (d.hermiticity > 1e-12)
    throw PlanError("couplings break the inverse-class pairing by " + std::to_string(d.hermiticity));
  return plan;
}

/// H = sum_k J_k A_k; throws PlanError naming the worst class pair unless
/// H is self-adjoint within tol.
inline CMatrix build_hamiltonian(const AssociationScheme& s, const std::vector<cplx>& couplings,
                                 double tol = 1e-12) {
  if (static_cast<int>(couplings.size()) != s.num_classes())
    throw ParameterError("plan has " + std::to_string(couplings.size()) + " couplings, scheme has " +
                         std::to_string(s.num_classes()) + " classes");
  CMatrix h = CMatrix::Zero(s.N, s.N);
  for (int k = 0; k < s.num_classes(); ++k) h += couplings[k] * s.adjacency[k].cast<cplx>();
  const double defect = max_abs(h - h.adjoint());
  if (defect > tol) {
    int worst = 0;
    double worst_dev = -1.0;
    for (int k = 0; k < s.num_classes(); ++k) {
      const double dev = std::abs(couplings[s.inverse_pairing[k]] - std::conj(couplings[k]));
      if (dev > worst_dev) {
        worst_dev = dev;
        worst = k;
      }
    }
    throw PlanError("H is not self-adjoint (defect " + std::to_string(defect) + "): classes " +
                    std::to_string(worst) + " and " + std::to_string(s.inverse_pairing[worst]) +
                    " need conjugate couplings");
  }
  return h;
}

inline CMatrix build_hamiltonian(const AssociationScheme& s, const CouplingPlan& plan) {
  return build_hamiltonian(s, plan.couplings);
}

/// Closed-form class couplings of the 2m-cycle with t0 J~_l = -pi l - theta:
/// J_l = (1/(2 m t0)) { -theta + 2 sum_{k=1}^{m-1} (-pi k - theta) cos(pi k l/m)
///                      - (-1)^l (pi m + theta) }.
inline std::vector<double> cyclic_closed_form(int m, double theta, double t0) {
  if (m < 2) throw ParameterError("cyclic closed form requires m >= 2");
  std::vector<double> j(m + 1);
  for (int l = 0; l <= m; ++l) {
    double sum = -theta;
    for (int k = 1; k <= m - 1; ++k) sum += 2.0 * (-kPi * k - theta) * std::cos(kPi * k * l / m);
    sum -= ((l % 2 == 0) ? 1.0 : -1.0) * (kPi * m + theta);
    j[l] = sum / (2.0 * m * t0);
  }
  return j;
}

}  // namespace pstnet
