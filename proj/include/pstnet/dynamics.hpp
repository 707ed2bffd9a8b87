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
#include <vector>

#include "pstnet/characters.hpp"
#include "pstnet/errors.hpp"
#include "pstnet/linalg.hpp"
#include "pstnet/solver.hpp"

namespace pstnet {

/// U(t) = sum_j exp(-i t J~_j) E_j over the joint eigenspaces.
inline CMatrix propagator(const IdempotentSet& ids, const std::vector<cplx>& eigenspace_tilde, double t,
                          double tol = 1e-10) {
  if (static_cast<int>(eigenspace_tilde.size()) != ids.size())
    throw ParameterError("need one J~ per eigenspace");
  const auto n = ids.E.front().rows();
  CMatrix u = CMatrix::Zero(n, n);
  for (int j = 0; j < ids.size(); ++j) u += std::exp(cplx{0.0, -t} * eigenspace_tilde[j]) * ids.E[j];
  const double defect = max_abs(u.adjoint() * u - CMatrix::Identity(n, n));
  if (defect > tol) throw SpectralError("propagator is not unitary (defect " + std::to_string(defect) + ")");
  return u;
}

inline CMatrix propagator(const IdempotentSet& ids, const CouplingPlan& plan, double t, double tol = 1e-10) {
  std::vector<cplx> folded(ids.size(), 0.0);
  std::vector<char> seen(ids.size(), 0);
  for (std::size_t l = 0; l < plan.tilde.size(); ++l)
    if (!seen[plan.fold[l]]) {
      folded[plan.fold[l]] = plan.tilde[l];
      seen[plan.fold[l]] = 1;
    }
  return propagator(ids, folded, t, tol);
}

/// Transfer amplitude f_{target,source}(t) = <target| U(t) |source>.
inline cplx transfer_amplitude(const IdempotentSet& ids, const std::vector<cplx>& eigenspace_tilde, double t,
                               int target, int source) {
  cplx f = 0.0;
  for (int j = 0; j < ids.size(); ++j) f += std::exp(cplx{0.0, -t} * eigenspace_tilde[j]) * ids.E[j](target, source);
  return f;
}

struct FidelityTrace {
  std::vector<double> times;
  std::vector<cplx> amplitudes;
  double t0 = 0.0;
  cplx at_t0;
  double probability_defect = 0.0;  // max over samples of |sum_j |f_j|^2 - 1|

  double verdict_abs() const { return std::abs(at_t0); }
  double verdict_arg() const { return std::arg(at_t0); }
};

/// Samples on t_k = k t0 / q, with q chosen so that roughly `steps`
/// intervals cover [0, t_max]; t0 itself is always an exact sample.
inline std::vector<double> time_grid(double t0, double t_max, int steps) {
  if (!(t0 > 0.0)) throw ParameterError("t0 must be positive");
  if (steps < 1) throw ParameterError("steps must be positive");
  t_max = std::max(t_max, t0);
  const long long q = std::max(1LL, std::llround(double(steps) * t0 / t_max));
  const long long count = static_cast<long long>(std::floor(t_max * double(q) / t0 + 1e-9));
  std::vector<double> ts;
  for (long long k = 0; k <= count; ++k) ts.push_back(t0 * (double(k) / double(q)));
  return ts;
}

inline FidelityTrace fidelity_trace(const IdempotentSet& ids, const std::vector<cplx>& eigenspace_tilde,
                                    double t0, int source, int target, double t_max, int steps) {
  FidelityTrace tr;
  tr.t0 = t0;
  tr.times = time_grid(t0, t_max, steps);
  for (double t : tr.times) {
    const CMatrix u = propagator(ids, eigenspace_tilde, t);
    tr.amplitudes.push_back(u(target, source));
    tr.probability_defect = std::max(tr.probability_defect, std::abs(u.col(source).squaredNorm() - 1.0));
  }
  tr.at_t0 = transfer_amplitude(ids, eigenspace_tilde, t0, target, source);
  return tr;
}

inline FidelityTrace fidelity_trace(const IdempotentSet& ids, const CouplingPlan& plan, double t_max, int steps) {
  std::vector<cplx> folded(ids.size(), 0.0);
  for (std::size_t l = 0; l < plan.tilde.size(); ++l) folded[plan.fold[l]] = plan.tilde[l];
  return fidelity_trace(ids, folded, plan.t0, plan.source_vertex, plan.target.target_vertex, t_max, steps);
}

}  // namespace pstnet
