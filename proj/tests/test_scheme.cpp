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

#include "pstnet/scheme.hpp"

namespace pstnet {
namespace {

AssociationScheme group_scheme(Family f, int n) {
  const auto g = build_group(f, n);
  return class_sum_adjacency(g, conjugacy_classes(g));
}

IntMatrix shift(int size, int k) {
  IntMatrix s = IntMatrix::Zero(size, size);
  for (int x = 0; x < size; ++x) s(((x + k) % size + size) % size, x) = 1;
  return s;
}

TEST(ClassSumAdjacency, ClassZeroIsIdentity) {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::dihedral_even, 4}, {Family::u6n, 2}}) {
    const auto s = group_scheme(f, n);
    EXPECT_EQ(s.adjacency[0], IntMatrix::Identity(s.N, s.N));
  }
}

TEST(ClassSumAdjacency, D8RotationClassHasValencyTwo) {
  const auto g = build_group(Family::dihedral_even, 4);
  const auto c = conjugacy_classes(g);
  const auto s = class_sum_adjacency(g, c);
  const int cls = c.class_of[*g.find_label("a")];
  for (int r = 0; r < 8; ++r) {
    EXPECT_EQ(s.adjacency[cls].row(r).sum(), 2);
    EXPECT_EQ(s.adjacency[cls].col(r).sum(), 2);
  }
}

TEST(ClassSumAdjacency, RelationsPartitionAllOnes) {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::dihedral_even, 8},
                                                          {Family::clifford, 3},
                                                          {Family::clifford, 4},
                                                          {Family::u6n, 3},
                                                          {Family::v8n, 3}}) {
    const auto s = group_scheme(f, n);
    IntMatrix total = IntMatrix::Zero(s.N, s.N);
    for (const auto& a : s.adjacency) total += a;
    EXPECT_EQ(total, IntMatrix::Ones(s.N, s.N)) << to_string(f);
  }
}

TEST(ClassSumAdjacency, EntriesFollowLeftRegularConvention) {
  const auto g = build_group(Family::u6n, 2);
  const auto c = conjugacy_classes(g);
  const auto s = class_sum_adjacency(g, c);
  for (int i = 0; i < c.count(); ++i)
    for (int y = 0; y < g.order; ++y)
      for (int x = 0; x < g.order; ++x)
        EXPECT_EQ(s.adjacency[i](y, x), c.class_of[g.mul(y, g.inv(x))] == i ? 1 : 0);
}

TEST(RegularRepresentation, HomomorphismOnRandomSamples) {
  std::mt19937 rng(11);
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::dihedral_even, 8},
                                                          {Family::clifford, 4},
                                                          {Family::u6n, 3},
                                                          {Family::v8n, 3}}) {
    const auto g = build_group(f, n);
    std::uniform_int_distribution<int> pick(0, g.order - 1);
    for (int trial = 0; trial < 20; ++trial) {
      const int a = pick(rng), b = pick(rng);
      EXPECT_EQ(IntMatrix(regular_matrix(g, a) * regular_matrix(g, b)), regular_matrix(g, g.mul(a, b)));
    }
  }
}

TEST(CycleDistanceScheme, M2MatchesShiftPowers) {
  const auto s = cycle_distance_scheme(2);
  ASSERT_EQ(s.N, 4);
  ASSERT_EQ(s.num_classes(), 3);
  EXPECT_EQ(s.adjacency[1], IntMatrix(shift(4, 1) + shift(4, 3)));
  EXPECT_EQ(s.adjacency[2], shift(4, 2));
  EXPECT_EQ(s.source, SchemeSource::cycle_distance);
}

TEST(CycleDistanceScheme, SymmetricAndCirculant) {
  for (int m = 2; m <= 6; ++m) {
    const auto s = cycle_distance_scheme(m);
    const IntMatrix sh = shift(2 * m, 1);
    for (int i = 0; i <= m; ++i) {
      EXPECT_EQ(s.adjacency[i], IntMatrix(s.adjacency[i].transpose()));
      EXPECT_EQ(IntMatrix(sh * s.adjacency[i]), IntMatrix(s.adjacency[i] * sh));
      const IntMatrix expected = (i == 0 || i == m) ? shift(2 * m, i) : IntMatrix(shift(2 * m, i) + shift(2 * m, -i));
      EXPECT_EQ(s.adjacency[i], expected);
      EXPECT_EQ(s.inverse_pairing[i], i);
    }
  }
}

TEST(CycleDistanceScheme, FourierModeEigenvalues) {
  const int m = 4, size = 8;
  const auto s = cycle_distance_scheme(m);
  const Eigen::MatrixXcd a1 = s.adjacency[1].cast<cplx>();
  for (int l = 0; l < size; ++l) {
    Eigen::VectorXcd v(size);
    for (int x = 0; x < size; ++x) v(x) = std::polar(1.0, 2.0 * kPi * l * x / size);
    const Eigen::VectorXcd av = a1 * v;
    EXPECT_LT((av - 2.0 * std::cos(kPi * l / m) * v).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(CycleDistanceScheme, RejectsSmallM) { EXPECT_THROW(cycle_distance_scheme(1), ParameterError); }

void expect_intersection_identities(const AssociationScheme& s, const IntersectionNumbers& p) {
  const int d1 = s.num_classes();
  for (int k = 0; k < d1; ++k)
    for (int i = 0; i < d1; ++i) EXPECT_EQ(p(k, i, 0), k == i ? 1 : 0);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) {
      std::int64_t sum = 0;
      IntMatrix expanded = IntMatrix::Zero(s.N, s.N);
      for (int k = 0; k < d1; ++k) {
        EXPECT_GE(p(k, i, j), 0);
        sum += p(k, i, j) * s.valencies[k];
        expanded += p(k, i, j) * s.adjacency[k];
      }
      EXPECT_EQ(sum, std::int64_t(s.valencies[i]) * s.valencies[j]);
      EXPECT_EQ(expanded, IntMatrix(s.adjacency[i] * s.adjacency[j]));
    }
}

TEST(VerifyBoseMesner, D8ClosureAndCommutativity) {
  const auto s = group_scheme(Family::dihedral_even, 4);
  const auto p = verify_bose_mesner(s);
  for (int i = 0; i < s.num_classes(); ++i)
    for (int j = 0; j < s.num_classes(); ++j)
      EXPECT_EQ(IntMatrix(s.adjacency[i] * s.adjacency[j]), IntMatrix(s.adjacency[j] * s.adjacency[i]));
  expect_intersection_identities(s, p);
}

TEST(VerifyBoseMesner, CycleM3BruteForceExpansion) {
  const auto s = cycle_distance_scheme(3);
  const auto p = verify_bose_mesner(s);
  expect_intersection_identities(s, p);
  // A_1^2 = (S + S^-1)^2 = 2 A_0 + A_2
  EXPECT_EQ(p(0, 1, 1), 2);
  EXPECT_EQ(p(2, 1, 1), 1);
  EXPECT_EQ(p(1, 1, 1), 0);
  // A_1 A_2 = (S + S^-1)(S^2 + S^-2) = A_1 + 2 A_3 on the hexagon
  EXPECT_EQ(p(1, 1, 2), 1);
  EXPECT_EQ(p(3, 1, 2), 2);
}

TEST(VerifyBoseMesner, AllFamiliesClose) {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::dihedral_even, 8},
                                                          {Family::clifford, 3},
                                                          {Family::clifford, 4},
                                                          {Family::u6n, 1},
                                                          {Family::u6n, 3},
                                                          {Family::v8n, 3}}) {
    const auto s = group_scheme(f, n);
    expect_intersection_identities(s, verify_bose_mesner(s));
  }
}

TEST(VerifyBoseMesner, BrokenSchemeReportsPair) {
  auto s = cycle_distance_scheme(3);
  s.adjacency[0] = IntMatrix::Zero(s.N, s.N);
  EXPECT_THROW(verify_bose_mesner(s), AlgebraError);

  // Fusing distances 1 and 2 on the octagon: S^1 appears twice in the
  // square of the fused relation but S^2 only once.
  const auto base = cycle_distance_scheme(4);
  AssociationScheme t = base;
  t.adjacency = {base.adjacency[0], IntMatrix(base.adjacency[1] + base.adjacency[2]), base.adjacency[3],
                 base.adjacency[4]};
  t.valencies = {1, 4, 2, 1};
  t.inverse_pairing = {0, 1, 2, 3};
  for (int& r : t.relation) r = (r <= 1) ? r : r - 1;
  try {
    verify_bose_mesner(t);
    FAIL() << "expected a closure failure";
  } catch (const AlgebraError& e) {
    EXPECT_EQ(e.kind(), "algebra");
    EXPECT_GE(e.i(), 0);
    EXPECT_GE(e.j(), 0);
  }
}

}  // namespace
}  // namespace pstnet
