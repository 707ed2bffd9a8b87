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

#include <gtest/gtest.h>

#include <random>

#include "pstnet/dynamics.hpp"
#include "pstnet/pipeline.hpp"

namespace pstnet {
namespace {

// Independent path: exp(-i t H) from a dense eigendecomposition of H.
CMatrix exact_exponential(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CVector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phases(k) = std::exp(cplx(0.0, -t * es.eigenvalues()(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

struct Designed {
  System sys;
  CouplingPlan plan;
  std::vector<cplx> tilde;
};

Designed design(Family f, int n, double theta = 0.0, double t0 = 1.0, Strategy st = Strategy::minimal,
                Backend backend = Backend::automatic) {
  Designed d{build_system(f, n, backend), {}, {}};
  d.plan = design_plan(d.sys, resolve_target(d.sys, ""), theta, t0, st);
  d.tilde = folded_tilde(d.plan.couplings, d.sys.eigen);
  return d;
}

TEST(Propagator, IdentityAtTimeZero) {
  const auto d = design(Family::u6n, 2, 0.4);
  EXPECT_LE(max_abs(propagator(d.sys.idempotents, d.tilde, 0.0) - CMatrix::Identity(12, 12)), 1e-14);
}

TEST(Propagator, UnitaryAtRandomTimes) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> time(-10.0, 10.0);
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::cyclic, 12}, {Family::v8n, 3}, {Family::clifford, 3}}) {
    const auto d = design(f, n, 1.1, 0.7);
    for (int k = 0; k < 5; ++k) {
      const CMatrix u = propagator(d.sys.idempotents, d.tilde, time(rng));
      EXPECT_LE(max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())), 1e-10);
    }
  }
}

TEST(Propagator, MatchesDenseExponentialOfH) {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::cyclic, 8}, {Family::dihedral_even, 8},
                                                          {Family::u6n, 3}, {Family::clifford, 4}}) {
    const auto d = design(f, n, 0.5, 1.0);
    const CMatrix h = build_hamiltonian(d.sys.scheme, d.plan);
    for (double t : {0.3, 1.0, 2.7}) EXPECT_LE(max_abs(propagator(d.sys.idempotents, d.tilde, t) - exact_exponential(h, t)), 1e-10);
  }
}

TEST(Propagator, SourceColumnIsModeSum) {
  const auto d = design(Family::u6n, 2, 0.0, 1.0);
  const CMatrix u = propagator(d.sys.idempotents, d.plan, d.plan.t0);
  const int src = d.plan.source_vertex;
  for (int j = 0; j < 12; ++j) {
    cplx f = 0.0;
    for (int l = 0; l < d.sys.idempotents.size(); ++l)
      f += std::exp(cplx(0.0, -d.plan.t0 * d.tilde[l].real())) * d.sys.idempotents.E[l](j, src);
    EXPECT_LT(std::abs(u(j, src) - f), 1e-14);
    EXPECT_LT(std::abs(transfer_amplitude(d.sys.idempotents, d.tilde, d.plan.t0, j, src) - f), 1e-14);
  }
}

TEST(Propagator, NonRealSpectrumIsRejected) {
  const auto d = design(Family::dihedral_even, 4);
  auto bad = d.tilde;
  bad[1] += cplx(0.0, 0.5);
  try {
    propagator(d.sys.idempotents, bad, 1.0);
    FAIL();
  } catch (const SpectralError& e) {
    EXPECT_EQ(e.kind(), "spectral");
  }
  EXPECT_THROW(propagator(d.sys.idempotents, std::vector<cplx>(2, 0.0), 1.0), ParameterError);
}

TEST(TimeGrid, ContainsT0Exactly) {
  for (double t0 : {1.0, 0.3, kPi / 3})
    for (double t_max : {t0, 2.0 * t0, 3.7 * t0, 0.5 * t0})
      for (int steps : {1, 7, 200}) {
        const auto ts = time_grid(t0, t_max, steps);
        EXPECT_EQ(ts.front(), 0.0);
        EXPECT_NE(std::find(ts.begin(), ts.end(), t0), ts.end()) << t0 << " " << t_max << " " << steps;
        for (std::size_t k = 1; k < ts.size(); ++k) EXPECT_GT(ts[k], ts[k - 1]);
        EXPECT_GE(ts.back(), std::max(t0, t_max) - 1e-12 - t0);
      }
  EXPECT_THROW(time_grid(0.0, 1.0, 10), ParameterError);
  EXPECT_THROW(time_grid(1.0, 1.0, 0), ParameterError);
}

TEST(FidelityTrace, CycleSquarePaperPlan) {
  const auto d = design(Family::cyclic, 4, 0.0, 1.0, Strategy::paper_cyclic);
  const auto tr = fidelity_trace(d.sys.idempotents, d.plan, 2.0, 100);
  EXPECT_NEAR(tr.verdict_abs(), 1.0, 1e-9);
  EXPECT_LE(angle_distance(tr.verdict_arg(), 0.0), 1e-8);
  EXPECT_LE(tr.probability_defect, 1e-10);
  EXPECT_LT(std::abs(tr.amplitudes.front()), 1e-14);  // source != target
}

TEST(FidelityTrace, CL3NumericBackend) {
  const auto d = design(Family::clifford, 3, 0.25, 1.0);
  EXPECT_EQ(d.sys.backend, Backend::numeric);
  const auto tr = fidelity_trace(d.sys.idempotents, d.plan, 3.0, 60);
  EXPECT_EQ(d.sys.group.labels[d.plan.target.target_vertex], "-1");
  EXPECT_NEAR(tr.verdict_abs(), 1.0, 1e-9);
  EXPECT_LE(angle_distance(tr.verdict_arg(), 0.25), 1e-8);
}

TEST(FidelityTrace, ZeroPlanStaysAtSource) {
  const auto sys = build_system(Family::u6n, 2);
  const std::vector<cplx> zero(sys.eigen.size(), 0.0);
  const int target = *sys.group.find_label("a^2");
  const auto at_target = fidelity_trace(sys.idempotents, zero, 1.0, 0, target, 4.0, 40);
  const auto at_source = fidelity_trace(sys.idempotents, zero, 1.0, 0, 0, 4.0, 40);
  for (std::size_t k = 0; k < at_target.times.size(); ++k) {
    EXPECT_LT(std::abs(at_target.amplitudes[k]), 1e-14);
    EXPECT_NEAR(std::abs(at_source.amplitudes[k]), 1.0, 1e-14);
  }
}

TEST(FidelityTrace, PhaseLawOnEveryFamily) {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::cyclic, 6}, {Family::dihedral_even, 4}, {Family::clifford, 4},
                                                          {Family::u6n, 1}, {Family::u6n, 3}, {Family::v8n, 3}}) {
    for (double theta : {0.0, -2.0, kPi}) {
      const auto d = design(f, n, theta, 2.0);
      const auto tr = fidelity_trace(d.sys.idempotents, d.plan, 2.0, 4);
      EXPECT_GE(tr.verdict_abs(), 1.0 - 1e-9) << to_string(f) << n;
      EXPECT_LE(angle_distance(tr.verdict_arg(), theta), 1e-8);
      EXPECT_LE(tr.probability_defect, 1e-10);
    }
  }
}

}  // namespace
}  // namespace pstnet
