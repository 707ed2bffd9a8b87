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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pstnet/errors.hpp"
#include "pstnet/linalg.hpp"

namespace pstnet {

inline constexpr std::int64_t kDefaultFockCap = 20000;

/// C(sites + bosons - 1, bosons), saturating at INT64_MAX.
inline std::int64_t fock_dimension(int sites, int bosons) {
  if (bosons == 0) return 1;
  if (sites == 0) return 0;
  long double r = 1;
  for (int k = 1; k <= bosons; ++k) {
    r = r * (sites - 1 + k) / k;
    if (r > 9.0e18L) return INT64_MAX;
  }
  return static_cast<std::int64_t>(std::llround(static_cast<double>(r)));
}

/// Occupation-number basis of `bosons` bosons on `sites` sites, in
/// descending lexicographic order: (n,0,..,0) first, so that for one boson
/// state i is the boson on site i.
class FockBasis {
 public:
  FockBasis(int sites, int bosons, std::int64_t cap = kDefaultFockCap) : sites_(sites), bosons_(bosons) {
    if (sites < 1 || bosons < 0) throw ParameterError("Fock basis needs sites >= 1 and bosons >= 0");
    const std::int64_t dim = fock_dimension(sites, bosons);
    if (dim > cap)
      throw CapacityError("Fock basis of " + std::to_string(bosons) + " bosons on " + std::to_string(sites) +
                          " sites has " + std::to_string(dim) + " states, cap is " + std::to_string(cap));
    std::vector<int> occ(sites, 0);
    fill(0, bosons, occ);
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], static_cast<int>(i));
  }

  int sites() const { return sites_; }
  int bosons() const { return bosons_; }
  int size() const { return static_cast<int>(states_.size()); }
  const std::vector<int>& occupation(int i) const { return states_[i]; }

  int index(const std::vector<int>& occ) const {
    auto it = index_.find(occ);
    if (it == index_.end()) throw ParameterError("occupation vector not in basis");
    return it->second;
  }

  /// All bosons on one site.
  int stacked(int site) const {
    std::vector<int> occ(sites_, 0);
    occ[site] = bosons_;
    return index(occ);
  }

 private:
  void fill(int site, int left, std::vector<int>& occ) {
    if (site == sites_ - 1) {
      occ[site] = left;
      states_.push_back(occ);
      return;
    }
    for (int k = left; k >= 0; --k) {
      occ[site] = k;
      fill(site + 1, left - k, occ);
    }
    occ[site] = 0;
  }

  int sites_;
  int bosons_;
  std::vector<std::vector<int>> states_;
  std::map<std::vector<int>, int> index_;
};

/// Matrix of sum_ij H_ij b_i^dag b_j on a fixed-number Fock basis.
inline CMatrix fock_hamiltonian(const CMatrix& h, const FockBasis& basis) {
  const int dim = basis.size();
  const int n = basis.sites();
  CMatrix out = CMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const auto& occ = basis.occupation(col);
    for (int j = 0; j < n; ++j) {
      if (occ[j] == 0) continue;
      for (int i = 0; i < n; ++i) {
        if (h(i, j) == cplx{0.0, 0.0}) continue;
        if (i == j) {
          out(col, col) += h(i, i) * double(occ[i]);
          continue;
        }
        auto next = occ;
        const double amp = std::sqrt(double(next[j])) * std::sqrt(double(next[i] + 1));
        --next[j];
        ++next[i];
        out(basis.index(next), col) += h(i, j) * amp;
      }
    }
  }
  return out;
}

/// exp(-i H_F t) on one particle-number sector via a dense Hermitian
/// eigendecomposition; decomposes once, evolves many times.
class FockEvolver {
 public:
  FockEvolver(const CMatrix& h, int bosons, std::int64_t cap = kDefaultFockCap)
      : basis_(static_cast<int>(h.rows()), bosons, cap) {
    const CMatrix hf = fock_hamiltonian(h, basis_);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hf);
    if (es.info() != Eigen::Success) throw SpectralError("Fock Hamiltonian eigendecomposition failed");
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
  }

  const FockBasis& basis() const { return basis_; }

  CVector evolve(const CVector& initial, double t) const {
    CVector coeff = evecs_.adjoint() * initial;
    for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff(k) *= std::exp(cplx{0.0, -t * evals_(k)});
    return evecs_ * coeff;
  }

  CMatrix propagator(double t) const {
    CVector phases(evals_.size());
    for (Eigen::Index k = 0; k < evals_.size(); ++k) phases(k) = std::exp(cplx{0.0, -t * evals_(k)});
    return evecs_ * phases.asDiagonal() * evecs_.adjoint();
  }

 private:
  FockBasis basis_;
  Eigen::VectorXd evals_;
  CMatrix evecs_;
};

/// Brute-force second-quantized evolution of `initial` (coefficients on the
/// FockBasis(N, bosons)) for time t.
inline CVector fock_oracle(const CMatrix& h, int bosons, const CVector& initial, double t,
                           std::int64_t cap = kDefaultFockCap) {
  FockEvolver ev(h, bosons, cap);
  if (initial.size() != ev.basis().size()) throw ParameterError("initial state has the wrong dimension");
  return ev.evolve(initial, t);
}

/// Max deviation between the evolved |bosons at source> and the product law
/// amplitude(occ) = sqrt(n! / prod occ_j!) prod_j f_j^occ_j, where f is
/// column `source` of the single-particle propagator.
inline double product_law_defect(const CMatrix& h, const CMatrix& single_particle_u, int source, int bosons,
                                 double t, std::int64_t cap = kDefaultFockCap) {
  FockEvolver ev(h, bosons, cap);
  const auto& basis = ev.basis();
  CVector init = CVector::Zero(basis.size());
  init(basis.stacked(source)) = 1.0;
  const CVector out = ev.evolve(init, t);
  double worst = 0.0;
  for (int s = 0; s < basis.size(); ++s) {
    const auto& occ = basis.occupation(s);
    double log_norm = std::lgamma(bosons + 1.0);
    cplx prod = 1.0;
    for (int j = 0; j < basis.sites(); ++j) {
      if (occ[j] == 0) continue;
      log_norm -= std::lgamma(occ[j] + 1.0);
      prod *= std::pow(single_particle_u(j, source), occ[j]);
    }
    worst = std::max(worst, std::abs(out(s) - std::sqrt(std::exp(log_norm)) * prod));
  }
  return worst;
}

struct QuditVerdict {
  double fidelity = 0.0;
  std::vector<double> level_overlaps;  // |<expected_i|evolved_i>| per level
  bool passed = false;
};

/// Fixed normalized test amplitudes alpha_i proportional to (i+1) e^{0.7 i i}.
inline std::vector<cplx> qudit_test_amplitudes(int d) {
  std::vector<cplx> a;
  double norm = 0.0;
  for (int i = 0; i <= d; ++i) {
    a.push_back(std::polar(double(i + 1), 0.7 * i));
    norm += double(i + 1) * double(i + 1);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return a;
}

/// Prepares sum_i alpha_i |i bosons at source> (normalized monomials), evolves
/// each number sector to t0 and compares with sum_i alpha_i e^{i i theta}
/// |i bosons at target>. Passes iff the fidelity reaches 1 - tol.
inline QuditVerdict verify_qudit_transfer(const CMatrix& h, int source, int target, double theta, double t0, int d,
                                          double tol = 1e-8, std::int64_t cap = kDefaultFockCap) {
  if (d < 1) throw ParameterError("qudit dimension must be at least 1");
  const int sites = static_cast<int>(h.rows());
  for (int i = 1; i <= d; ++i)
    if (fock_dimension(sites, i) > cap)
      throw CapacityError("qudit level " + std::to_string(i) + " needs " +
                          std::to_string(fock_dimension(sites, i)) + " Fock states, cap is " + std::to_string(cap));
  const auto alpha = qudit_test_amplitudes(d);
  QuditVerdict v;
  cplx overlap = std::norm(alpha[0]);  // vacuum is stationary
  v.level_overlaps.push_back(1.0);
  for (int i = 1; i <= d; ++i) {
    FockEvolver ev(h, i, cap);
    CVector init = CVector::Zero(ev.basis().size());
    init(ev.basis().stacked(source)) = 1.0;
    const CVector out = ev.evolve(init, t0);
    const cplx expected_phase = std::exp(cplx{0.0, theta * i});
    const cplx amp = std::conj(expected_phase) * out(ev.basis().stacked(target));
    v.level_overlaps.push_back(std::abs(out(ev.basis().stacked(target))));
    overlap += std::norm(alpha[i]) * amp;
  }
  v.fidelity = std::norm(overlap);
  v.passed = v.fidelity >= 1.0 - tol;
  return v;
}

}  // namespace pstnet
