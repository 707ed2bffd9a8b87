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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace pstnet {

using cplx = std::complex<double>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

/// e^{2 pi i p/q}, exact on the axes so that real characters stay real.
inline cplx unit_root(std::int64_t p, std::int64_t q) {
  std::int64_t r = ((p % q) + q) % q;
  if (r == 0) return {1.0, 0.0};
  if (2 * r == q) return {-1.0, 0.0};
  if (4 * r == q) return {0.0, 1.0};
  if (4 * r == 3 * q) return {0.0, -1.0};
  const double angle = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(q);
  return {std::cos(angle), std::sin(angle)};
}

/// cos(pi p/q) evaluated through unit_root.
inline double cos_pi(std::int64_t p, std::int64_t q) {
  return unit_root(p, 2 * q).real();
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

/// Principal argument in (-pi, pi]; folds the -pi branch onto +pi.
inline double principal_arg(cplx z) {
  double a = std::arg(z);
  if (a <= -kPi + 1e-12) a += 2.0 * kPi;
  return a;
}

/// Distance between two angles on the circle.
inline double angle_distance(double a, double b) {
  double d = std::remainder(a - b, 2.0 * kPi);
  return std::abs(d);
}

}  // namespace pstnet
