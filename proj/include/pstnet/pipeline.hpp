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

#include <cstdint>
#include <optional>
#include <string>

#include "pstnet/characters.hpp"
#include "pstnet/errors.hpp"
#include "pstnet/group.hpp"
#include "pstnet/numeric.hpp"
#include "pstnet/scheme.hpp"
#include "pstnet/solver.hpp"

namespace pstnet {

enum class Backend { automatic, analytic, numeric };

inline std::string to_string(Backend b) {
  switch (b) {
    case Backend::automatic: return "auto";
    case Backend::analytic: return "analytic";
    case Backend::numeric: return "numeric";
  }
  return "auto";
}

inline Backend parse_backend(const std::string& s) {
  if (s == "auto") return Backend::automatic;
  if (s == "analytic") return Backend::analytic;
  if (s == "numeric") return Backend::numeric;
  throw ParameterError("unknown backend '" + s + "'");
}

/// One family instance with everything the solver and simulator need:
/// the scheme, a mode table, eigenvalue matrices and joint projectors.
struct System {
  Family family = Family::custom;
  int n = 0;
  Backend backend = Backend::analytic;  // resolved, never automatic
  std::uint64_t seed = kDefaultSeed;
  FiniteGroup group;  // for the cycle: C_{2m} labelling the vertices
  std::optional<ConjugacyClasses> classes;  // group schemes only
  AssociationScheme scheme;
  CharacterTable table;
  EigenMatrices eigen;
  IdempotentSet idempotents;
  std::optional<NumericEigenSystem> numeric;
};

inline bool has_analytic_table(Family f, int n) {
  switch (f) {
    case Family::clifford: return n % 2 == 0;
    case Family::custom: return false;
    default: return true;
  }
}

/// Scheme of a family instance: the cycle distance scheme for `cyclic`
/// (n = 2m vertices), the conjugacy-class scheme otherwise.
inline System build_scheme_only(Family f, int n) {
  System sys;
  sys.family = f;
  sys.n = n;
  sys.group = build_group(f, n);
  if (f == Family::cyclic) {
    if (n % 2 != 0 || n < 4)
      throw ParameterError("cycle distance scheme needs an even cycle length 2m >= 4, got " + std::to_string(n));
    sys.scheme = cycle_distance_scheme(n / 2);
  } else {
    sys.classes = conjugacy_classes(sys.group);
    sys.scheme = class_sum_adjacency(sys.group, *sys.classes);
  }
  return sys;
}

inline System build_system(Family f, int n, Backend backend = Backend::automatic,
                           std::uint64_t seed = kDefaultSeed) {
  System sys = build_scheme_only(f, n);
  sys.seed = seed;
  if (backend == Backend::automatic) backend = has_analytic_table(f, n) ? Backend::analytic : Backend::numeric;
  sys.backend = backend;
  if (backend == Backend::analytic) {
    if (f == Family::cyclic) {
      sys.table = fourier_table(n / 2);
      sys.eigen = eigen_matrices(sys.table, sys.scheme.valencies);
      sys.idempotents = fourier_projectors(sys.table);
    } else {
      sys.table = character_table(sys.group, *sys.classes);
      sys.eigen = eigen_matrices(sys.table, sys.scheme.valencies);
      sys.idempotents = idempotents(sys.table, sys.group, *sys.classes);
    }
  } else {
    sys.numeric = numeric_eigenmatrix(sys.scheme, seed);
    sys.table = numeric_table(*sys.numeric, sys.scheme);
    sys.eigen = eigen_matrices(sys.table, sys.scheme.valencies);
    sys.idempotents.E = sys.numeric->projectors;
  }
  check_idempotents(sys.idempotents, sys.scheme, sys.eigen.P);
  return sys;
}

/// Resolves a target given as an element label or generator word, or as a
/// class index; an empty string selects the family's antipode.
inline TargetSpec resolve_target(const System& sys, const std::string& spec) {
  int vertex = -1;
  if (spec.empty() || spec == "default") {
    vertex = default_target_element(sys.group);
  } else if (auto found = sys.group.find_label(spec)) {
    vertex = *found;
  } else {
    std::size_t used = 0;
    int cls = -1;
    try {
      cls = std::stoi(spec, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != spec.size() || cls < 0)
      throw ParameterError("target '" + spec + "' is neither an element label nor a class index");
    return make_target(sys.scheme, cls, &sys.group);
  }
  return make_target(sys.scheme, sys.scheme.relation_of(vertex, 0), &sys.group);
}

inline CouplingPlan design_plan(const System& sys, const TargetSpec& target, double theta = 0.0, double t0 = 1.0,
                                Strategy strategy = Strategy::minimal, const std::vector<long long>& custom = {}) {
  CouplingPlan plan = solve_plan(sys.scheme, sys.table, sys.eigen, target, theta, t0, strategy, custom);
  plan.source_vertex = sys.group.identity;
  return plan;
}

}  // namespace pstnet
