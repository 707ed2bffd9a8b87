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

#include <stdexcept>
#include <string>

namespace pstnet {

/// Base of every error thrown by the library. `kind()` is a stable
/// machine-readable tag used by the command-line front end.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Caller-side mistakes: bad family parameters, bad flags, bad targets.
struct ParameterError : Error {
  explicit ParameterError(const std::string& w) : Error("parameter", w) {}
};
struct UnsupportedAnalyticError : Error {
  explicit UnsupportedAnalyticError(const std::string& w)
      : Error("unsupported-analytic", w) {}
};
struct CentralityError : Error {
  explicit CentralityError(const std::string& w) : Error("centrality", w) {}
};
struct StrategyError : Error {
  explicit StrategyError(const std::string& w) : Error("strategy", w) {}
};
struct CapacityError : Error {
  explicit CapacityError(const std::string& w) : Error("capacity", w) {}
};

// Internal-consistency failures: the mathematics did not close up.
struct AlgebraError : Error {
  AlgebraError(const std::string& w, int i, int j)
      : Error("algebra", w), i_(i), j_(j) {}
  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }

 private:
  int i_, j_;
};
struct ConsistencyError : Error {
  explicit ConsistencyError(const std::string& w)
      : Error("internal-consistency", w) {}
};
struct ResolutionError : Error {
  ResolutionError(const std::string& w, double residual)
      : Error("resolution", w), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};
struct MismatchError : Error {
  explicit MismatchError(const std::string& w) : Error("mismatch", w) {}
};
struct LinearSystemError : Error {
  explicit LinearSystemError(const std::string& w)
      : Error("linear-system", w) {}
};
struct PlanError : Error {
  explicit PlanError(const std::string& w) : Error("plan", w) {}
};
struct SpectralError : Error {
  explicit SpectralError(const std::string& w) : Error("spectral", w) {}
};

}  // namespace pstnet
