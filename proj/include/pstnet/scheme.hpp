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

#include <string>
#include <vector>

#include "pstnet/errors.hpp"
#include "pstnet/group.hpp"
#include "pstnet/linalg.hpp"

namespace pstnet {

enum class SchemeSource { group, cycle_distance };

inline std::string to_string(SchemeSource s) {
  return s == SchemeSource::group ? "group-scheme" : "cycle-distance-scheme";
}

/// Commutative association scheme on N vertices. Vertex v is a group element
/// (for the cycle, vertex k is a^k in C_{2m}); A_i[y][x] = 1 iff the pair
/// x -> y is in relation i. `classes[i]` lists the i-neighbours of vertex 0.
struct AssociationScheme {
  int N = 0;
  std::vector<IntMatrix> adjacency;
  std::vector<int> valencies;
  std::vector<int> inverse_pairing;
  std::vector<std::vector<int>> classes;
  std::vector<int> representatives;
  std::vector<int> relation;  // relation[y*N + x]
  std::vector<std::string> vertex_labels;
  SchemeSource source = SchemeSource::group;

  int num_classes() const { return static_cast<int>(adjacency.size()); }
  int relation_of(int y, int x) const { return relation[static_cast<std::size_t>(y) * N + x]; }
  std::string class_label(int i) const { return vertex_labels[representatives[i]]; }
};

/// Permutation matrix of left multiplication by `element`: e_x -> e_{gx}.
inline IntMatrix regular_matrix(const FiniteGroup& g, int element) {
  IntMatrix m = IntMatrix::Zero(g.order, g.order);
  for (int x = 0; x < g.order; ++x) m(g.mul(element, x), x) = 1;
  return m;
}

/// A_i = sum over g in C_i of the regular-representation matrix of g, so
/// A_i[y][x] = 1 iff y x^-1 lies in C_i.
inline AssociationScheme class_sum_adjacency(const FiniteGroup& g, const ConjugacyClasses& c) {
  AssociationScheme s;
  s.N = g.order;
  s.source = SchemeSource::group;
  s.valencies = c.sizes;
  s.inverse_pairing = inverse_class_map(c, g);
  s.classes = c.classes;
  s.representatives = c.representatives;
  s.vertex_labels = g.labels;
  s.relation.assign(static_cast<std::size_t>(s.N) * s.N, -1);
  s.adjacency.assign(c.count(), IntMatrix::Zero(s.N, s.N));
  for (int y = 0; y < s.N; ++y)
    for (int x = 0; x < s.N; ++x) {
      const int i = c.class_of[g.mul(y, g.inv(x))];
      s.adjacency[i](y, x) = 1;
      s.relation[static_cast<std::size_t>(y) * s.N + x] = i;
    }
  return s;
}

/// Distance scheme of the 2m-cycle: A_0 = I, A_i = S^i + S^-i, A_m = S^m.
inline AssociationScheme cycle_distance_scheme(int m) {
  if (m < 2) throw ParameterError("cycle distance scheme requires m >= 2, got m = " + std::to_string(m));
  AssociationScheme s;
  s.N = 2 * m;
  s.source = SchemeSource::cycle_distance;
  s.relation.assign(static_cast<std::size_t>(s.N) * s.N, -1);
  s.adjacency.assign(m + 1, IntMatrix::Zero(s.N, s.N));
  for (int y = 0; y < s.N; ++y)
    for (int x = 0; x < s.N; ++x) {
      const int d = detail::mod(y - x, s.N);
      const int i = std::min(d, s.N - d);
      s.adjacency[i](y, x) = 1;
      s.relation[static_cast<std::size_t>(y) * s.N + x] = i;
    }
  for (int i = 0; i <= m; ++i) {
    s.inverse_pairing.push_back(i);
    s.representatives.push_back(i);
    if (i == 0 || i == m) {
      s.classes.push_back({i});
      s.valencies.push_back(1);
    } else {
      s.classes.push_back({i, s.N - i});
      s.valencies.push_back(2);
    }
  }
  for (int k = 0; k < s.N; ++k) s.vertex_labels.push_back(detail::ab_label({k, 0}, s.N));
  return s;
}

/// p[k][i][j] with A_i A_j = sum_k p_ij^k A_k.
struct IntersectionNumbers {
  std::vector<std::vector<std::vector<std::int64_t>>> p;

  std::int64_t operator()(int k, int i, int j) const { return p[k][i][j]; }
};

/// Checks the scheme axioms exactly and extracts the structure constants.
/// Throws AlgebraError naming the offending (i, j) when something fails.
inline IntersectionNumbers verify_bose_mesner(const AssociationScheme& s) {
  const int n = s.N;
  const int d1 = s.num_classes();
  if (d1 == 0) throw AlgebraError("scheme has no relations", -1, -1);
  if (s.adjacency[0] != IntMatrix::Identity(n, n)) throw AlgebraError("A_0 is not the identity", 0, 0);
  IntMatrix total = IntMatrix::Zero(n, n);
  for (const auto& a : s.adjacency) total += a;
  if (total != IntMatrix::Ones(n, n)) throw AlgebraError("relations do not sum to the all-ones matrix", -1, -1);
  for (int i = 0; i < d1; ++i) {
    const auto& a = s.adjacency[i];
    for (int r = 0; r < n; ++r)
      if (a.row(r).sum() != s.valencies[i] || a.col(r).sum() != s.valencies[i])
        throw AlgebraError("A_" + std::to_string(i) + " is not regular of valency " +
                               std::to_string(s.valencies[i]),
                           i, i);
    if (IntMatrix(a.transpose()) != s.adjacency[s.inverse_pairing[i]])
      throw AlgebraError("transpose of A_" + std::to_string(i) + " is not A_" +
                             std::to_string(s.inverse_pairing[i]),
                         i, s.inverse_pairing[i]);
  }

  IntersectionNumbers out;
  out.p.assign(d1, std::vector<std::vector<std::int64_t>>(d1, std::vector<std::int64_t>(d1, 0)));
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) {
      const IntMatrix prod = s.adjacency[i] * s.adjacency[j];
      const IntMatrix swapped = s.adjacency[j] * s.adjacency[i];
      if (prod != swapped)
        throw AlgebraError("A_" + std::to_string(i) + " and A_" + std::to_string(j) + " do not commute", i, j);
      // Coefficient of A_k read off at any position in its support; closure
      // means the product is constant on every relation.
      std::vector<std::int64_t> coef(d1, -1);
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
          const int k = s.relation_of(y, x);
          if (coef[k] < 0) {
            coef[k] = prod(y, x);
          } else if (coef[k] != prod(y, x)) {
            throw AlgebraError("A_" + std::to_string(i) + " A_" + std::to_string(j) +
                                   " is not in the span of the relations",
                               i, j);
          }
        }
      for (int k = 0; k < d1; ++k) out.p[k][i][j] = coef[k];
    }
  return out;
}

}  // namespace pstnet
