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

#include "pstnet/dynamics.hpp"
#include "pstnet/fock.hpp"
#include "pstnet/pipeline.hpp"

namespace pstnet {
namespace {

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

CMatrix taylor_exp(const CMatrix& a) {
  CMatrix term = CMatrix::Identity(a.rows(), a.cols()), sum = term;
  for (int k = 1; k < 60; ++k) {
    term = term * a / double(k);
    sum += term;
  }
  return sum;
}

TEST(FockBasis, SizeOrderAndRoundTrip) {
  for (int sites : {1, 2, 4, 6})
    for (int bosons : {0, 1, 2, 3}) {
      const FockBasis b(sites, bosons);
      EXPECT_EQ(b.size(), binomial(sites + bosons - 1, bosons));
      EXPECT_EQ(fock_dimension(sites, bosons), b.size());
      for (int i = 0; i < b.size(); ++i) {
        int total = 0;
        for (int o : b.occupation(i)) total += o;
        EXPECT_EQ(total, bosons);
        EXPECT_EQ(b.index(b.occupation(i)), i);
        if (i > 0) EXPECT_TRUE(b.occupation(i - 1) > b.occupation(i));
      }
    }
  const FockBasis one(5, 1);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(one.occupation(i)[i], 1);
  EXPECT_THROW(one.index({2, 0, 0, 0, 0}), ParameterError);
}

TEST(FockBasis, CapacityError) {
  EXPECT_THROW(FockBasis(24, 4, 1000), CapacityError);
  try {
    FockBasis(32, 3, 100);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "capacity");
  }
}

TEST(FockOracle, SingleBosonReproducesPropagator) {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::cyclic, 8}, {Family::u6n, 2}, {Family::clifford, 3}}) {
    const auto sys = build_system(f, n);
    const auto plan = design_plan(sys, resolve_target(sys, ""), 0.3, 1.0);
    const CMatrix h = build_hamiltonian(sys.scheme, plan);
    const auto tilde = folded_tilde(plan.couplings, sys.eigen);
    for (double t : {0.4, 1.0}) {
      const CMatrix u = propagator(sys.idempotents, tilde, t);
      for (int src : {0, 1}) {
        CVector init = CVector::Zero(sys.scheme.N);
        init(src) = 1.0;
        const CVector out = fock_oracle(h, 1, init, t);
        EXPECT_LE((out - u.col(src)).cwiseAbs().maxCoeff(), 1e-10);
      }
    }
  }
}

TEST(FockOracle, ConservesBosonNumber) {
  const auto sys = build_system(Family::dihedral_even, 4);
  const auto plan = design_plan(sys, resolve_target(sys, ""), 0.0, 1.0);
  const CMatrix h = build_hamiltonian(sys.scheme, plan);
  FockEvolver ev(h, 3);
  CVector init = CVector::Zero(ev.basis().size());
  init(ev.basis().stacked(0)) = 0.6;
  init(ev.basis().index({1, 1, 1, 0, 0, 0, 0, 0})) = cplx(0.0, 0.8);
  for (double t : {0.2, 0.9, 5.0}) {
    const CVector out = ev.evolve(init, t);
    double norm = 0.0, number = 0.0;
    for (int s = 0; s < ev.basis().size(); ++s) {
      double occ = 0.0;
      for (int o : ev.basis().occupation(s)) occ += o;
      norm += std::norm(out(s));
      number += std::norm(out(s)) * occ;
    }
    EXPECT_NEAR(norm, 1.0, 1e-12);
    EXPECT_NEAR(number, 3.0, 1e-12);
  }
}

TEST(FockOracle, TwoSitesTwoBosonsInterference) {
  const double j = 0.8, t = kPi / (4.0 * j);
  CMatrix h(2, 2);
  h << 0.0, j, j, 0.0;
  const FockBasis basis(2, 2);
  const int s20 = basis.index({2, 0}), s11 = basis.index({1, 1}), s02 = basis.index({0, 2});
  // explicit 3x3 generator: <11|H|20> = <02|H|11> = sqrt(2) J
  CMatrix hf = CMatrix::Zero(3, 3);
  hf(s11, s20) = hf(s20, s11) = std::sqrt(2.0) * j;
  hf(s02, s11) = hf(s11, s02) = std::sqrt(2.0) * j;
  EXPECT_LE(max_abs(fock_hamiltonian(h, basis) - hf), 1e-15);
  const CVector expected = taylor_exp(cplx(0.0, -t) * hf).col(s20);
  CVector init = CVector::Zero(3);
  init(s20) = 1.0;
  const CVector out = fock_oracle(h, 2, init, t);
  EXPECT_LE((out - expected).cwiseAbs().maxCoeff(), 1e-12);
  // single-particle amplitudes cos(Jt) = 1/sqrt2, -i sin(Jt) = -i/sqrt2
  EXPECT_NEAR(std::abs(out(s20) - 0.5), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out(s02) + 0.5), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out(s11) - cplx(0.0, -1.0 / std::sqrt(2.0))), 0.0, 1e-12);
}

TEST(ProductLaw, HoldsForTwoBosons) {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::cyclic, 4}, {Family::u6n, 2}, {Family::v8n, 1}}) {
    const auto sys = build_system(f, n);
    const auto plan = design_plan(sys, resolve_target(sys, ""), 0.6, 1.0);
    const CMatrix h = build_hamiltonian(sys.scheme, plan);
    const auto tilde = folded_tilde(plan.couplings, sys.eigen);
    for (double t : {0.37, 1.0}) {
      const CMatrix u = propagator(sys.idempotents, tilde, t);
      EXPECT_LE(product_law_defect(h, u, 0, 2, t), 1e-9);
    }
  }
}

TEST(QuditTransfer, SingleLevelReducesToAmplitude) {
  const auto sys = build_system(Family::cyclic, 4);
  const auto plan = design_plan(sys, resolve_target(sys, ""), 0.5, 1.0);
  const CMatrix h = build_hamiltonian(sys.scheme, plan);
  const auto v = verify_qudit_transfer(h, 0, plan.target.target_vertex, 0.5, 1.0, 1);
  EXPECT_TRUE(v.passed);
  EXPECT_NEAR(v.level_overlaps[1], 1.0, 1e-9);
  const cplx f = transfer_amplitude(sys.idempotents, folded_tilde(plan.couplings, sys.eigen), 1.0,
                                    plan.target.target_vertex, 0);
  EXPECT_NEAR(v.level_overlaps[1], std::abs(f), 1e-10);
}

TEST(QuditTransfer, QutritOnSquareAndU12) {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::cyclic, 4}, {Family::u6n, 2}}) {
    const auto sys = build_system(f, n);
    for (double theta : {0.0, kPi / 3}) {
      const auto plan = design_plan(sys, resolve_target(sys, ""), theta, 1.0);
      const CMatrix h = build_hamiltonian(sys.scheme, plan);
      const auto v = verify_qudit_transfer(h, 0, plan.target.target_vertex, theta, 1.0, 2);
      EXPECT_GE(v.fidelity, 1.0 - 1e-8) << to_string(f);
      EXPECT_TRUE(v.passed);
    }
  }
}

TEST(QuditTransfer, WrongPhaseOrTimeFails) {
  const auto sys = build_system(Family::u6n, 2);
  const auto plan = design_plan(sys, resolve_target(sys, ""), 0.0, 1.0);
  const CMatrix h = build_hamiltonian(sys.scheme, plan);
  EXPECT_FALSE(verify_qudit_transfer(h, 0, plan.target.target_vertex, 0.0, 0.5, 2).passed);
  EXPECT_FALSE(verify_qudit_transfer(h, 0, plan.target.target_vertex, 1.0, 1.0, 2).passed);
  EXPECT_THROW(verify_qudit_transfer(h, 0, 1, 0.0, 1.0, 0), ParameterError);
  EXPECT_THROW(verify_qudit_transfer(h, 0, 1, 0.0, 1.0, 3, 1e-8, 50), CapacityError);
}

TEST(QuditTransfer, TestAmplitudesAreNormalized) {
  for (int d : {1, 2, 5}) {
    double norm = 0.0;
    for (auto a : qudit_test_amplitudes(d)) norm += std::norm(a);
    EXPECT_NEAR(norm, 1.0, 1e-15);
  }
}

}  // namespace
}  // namespace pstnet
