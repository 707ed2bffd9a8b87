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
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pstnet/characters.hpp"
#include "pstnet/errors.hpp"
#include "pstnet/linalg.hpp"
#include "pstnet/scheme.hpp"

namespace pstnet {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Joint eigenspaces of a commuting family found without character data.
struct NumericEigenSystem {
  CMatrix P;                      // P(i, j): eigenvalue of A_i on eigenspace j
  std::vector<CMatrix> projectors;
  std::vector<int> multiplicities;
  double tolerance = 0.0;         // absolute clustering tolerance used
  std::uint64_t seed = kDefaultSeed;
  int attempts = 0;

  int size() const { return static_cast<int>(projectors.size()); }
};

namespace detail {

inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Diagonalizes M = sum_i (c_i A_i + conj(c_i) A_i^T) for pseudorandom c_i,
/// clusters its spectrum and reads off each A_i's action per cluster.
/// Retries with fresh coefficients (8 draws in total) while some cluster is
/// not a joint eigenspace.
inline NumericEigenSystem numeric_eigenmatrix(const AssociationScheme& s, std::uint64_t seed = kDefaultSeed,
                                              double rel_tol = 1e-8) {
  const int n = s.N;
  const int d1 = s.num_classes();
  std::vector<CMatrix> a;
  for (const auto& m : s.adjacency) a.push_back(m.cast<cplx>());

  double worst_residual = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt));
    CMatrix m = CMatrix::Zero(n, n);
    for (int i = 0; i < d1; ++i) {
      // magnitudes in [0.5, 1.5) keep every relation visible in M
      const double mag = 0.5 + detail::unit_draw(rng);
      const double ang = 2.0 * kPi * detail::unit_draw(rng);
      const cplx c = std::polar(mag, ang);
      m += c * a[i] + std::conj(c) * a[i].adjoint();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    if (es.info() != Eigen::Success) continue;
    const auto& ev = es.eigenvalues();
    const double diameter = std::max(1.0, ev(n - 1) - ev(0));
    const double tol = rel_tol * diameter;

    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    int begin = 0;
    for (int k = 1; k <= n; ++k)
      if (k == n || ev(k) - ev(k - 1) > tol) {
        clusters.emplace_back(begin, k);
        begin = k;
      }

    NumericEigenSystem out;
    out.seed = seed;
    out.attempts = attempt + 1;
    out.tolerance = tol;
    out.P = CMatrix::Zero(d1, static_cast<Eigen::Index>(clusters.size()));
    double residual = 0.0;
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      const auto [lo, hi] = clusters[j];
      const CMatrix v = es.eigenvectors().middleCols(lo, hi - lo);
      for (int i = 0; i < d1; ++i) {
        const CMatrix av = a[i] * v;
        const cplx lambda = (v.adjoint() * av).trace() / double(hi - lo);
        residual = std::max(residual, max_abs(av - lambda * v));
        out.P(i, static_cast<Eigen::Index>(j)) = lambda;
      }
      out.projectors.push_back(v * v.adjoint());
      out.multiplicities.push_back(hi - lo);
    }
    worst_residual = residual;
    if (residual <= 1e-8 && static_cast<int>(clusters.size()) == d1) return out;
    if (static_cast<int>(clusters.size()) != d1) worst_residual = std::max(worst_residual, tol);
  }
  throw ResolutionError("joint eigenspaces under-resolved after 8 draws; worst cluster residual " +
                            std::to_string(worst_residual),
                        worst_residual);
}

/// Mode table derived purely from the numeric eigensystem. An eigenspace of
/// square multiplicity d^2 becomes one mode of dimension d; any other
/// multiplicity (the cycle's doubled Fourier pairs) becomes that many modes
/// of dimension 1. chi_l(alpha_i) = d_l P_ij / kappa_i.
inline CharacterTable numeric_table(const NumericEigenSystem& ns, const AssociationScheme& s) {
  CharacterTable t;
  t.source = TableSource::numeric;
  t.group_order = s.N;
  t.num_eigenspaces = ns.size();
  std::vector<std::pair<int, int>> modes;  // (eigenspace, dim)
  for (int j = 0; j < ns.size(); ++j) {
    const int mult = ns.multiplicities[j];
    int d = static_cast<int>(std::lround(std::sqrt(double(mult))));
    if (d * d == mult) {
      modes.emplace_back(j, d);
    } else {
      for (int r = 0; r < mult; ++r) modes.emplace_back(j, 1);
    }
  }
  t.values = CMatrix::Zero(static_cast<Eigen::Index>(modes.size()), s.num_classes());
  for (std::size_t l = 0; l < modes.size(); ++l) {
    const auto [j, d] = modes[l];
    t.dims.push_back(d);
    t.fold.push_back(j);
    t.labels.push_back("space" + std::to_string(j));
    for (int i = 0; i < s.num_classes(); ++i)
      t.values(static_cast<Eigen::Index>(l), i) = double(d) * ns.P(i, j) / double(s.valencies[i]);
  }
  return t;
}

struct MatchingReport {
  std::vector<int> permutation;  // analytic column j -> numeric column
  double max_deviation = 0.0;
  bool success = false;
};

/// Matches analytic eigenspace columns to numeric ones: greedy nearest column
/// followed by a full verification pass. Throws MismatchError past tol.
inline MatchingReport reconcile(const CMatrix& analytic_p, const CMatrix& numeric_p, double tol = 1e-8) {
  if (analytic_p.rows() != numeric_p.rows() || analytic_p.cols() != numeric_p.cols())
    throw MismatchError("analytic P is " + std::to_string(analytic_p.rows()) + "x" +
                        std::to_string(analytic_p.cols()) + " but numeric P is " +
                        std::to_string(numeric_p.rows()) + "x" + std::to_string(numeric_p.cols()));
  const auto k = analytic_p.cols();
  MatchingReport r;
  std::vector<char> used(static_cast<std::size_t>(k), 0);
  for (Eigen::Index j = 0; j < k; ++j) {
    int best = -1;
    double best_dev = 0.0;
    for (Eigen::Index c = 0; c < k; ++c) {
      if (used[c]) continue;
      const double dev = max_abs(analytic_p.col(j) - numeric_p.col(c));
      if (best < 0 || dev < best_dev) {
        best = static_cast<int>(c);
        best_dev = dev;
      }
    }
    used[best] = 1;
    r.permutation.push_back(best);
  }
  int worst_col = 0;
  for (Eigen::Index j = 0; j < k; ++j) {
    const double dev = max_abs(analytic_p.col(j) - numeric_p.col(r.permutation[j]));
    if (dev > r.max_deviation) {
      r.max_deviation = dev;
      worst_col = static_cast<int>(j);
    }
  }
  r.success = r.max_deviation <= tol;
  if (!r.success)
    throw MismatchError("no column matching within " + std::to_string(tol) + "; worst pair analytic " +
                        std::to_string(worst_col) + " / numeric " + std::to_string(r.permutation[worst_col]) +
                        " deviates by " + std::to_string(r.max_deviation));
  return r;
}

inline MatchingReport reconcile(const EigenMatrices& analytic, const NumericEigenSystem& numeric,
                                double tol = 1e-8) {
  return reconcile(analytic.P, numeric.P, tol);
}

}  // namespace pstnet
