// Copyright 2026 The boostbound Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

namespace boostbound {

/// Raised when d > e * m, where the first radicand of the bound is negative.
class BoundInapplicable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kDefaultDelta = 0.05;

struct BoundInput {
  /// L1-geometric margin; nullopt means undefined (all-zero alphas).
  std::optional<double> rho;
  std::size_t d = 1;
  std::size_t m = 1;
  double delta = kDefaultDelta;
};

/// Margin bound on the generalization gap:
///
///   (2 / rho) sqrt(2 d ln(e m / d) / m) + sqrt(ln(1 / delta) / (2 m))
///
/// Returns +infinity when rho is 0 or undefined. Throws BoundInapplicable
/// when d > e m and std::invalid_argument for out-of-range inputs.
double epsilon_boost(const BoundInput& input);

/// True when d <= e m, i.e. epsilon_boost has a real value.
bool bound_applicable(std::size_t d, std::size_t m);

/// test_error - train_error; both must lie in [0, 1].
double gap(double train_error, double test_error);

struct GapReport {
  double train_error = 0.0;
  double test_error = 0.0;
  double delta_r = 0.0;
  std::optional<double> rho;
  /// +infinity when rho is 0 or undefined; NaN when !applicable.
  double epsilon_boost = 0.0;
  bool holds = false;
  bool applicable = true;

  friend bool operator==(const GapReport&, const GapReport&) = default;
};

/// Assembles a report; holds = (delta_r <= epsilon_boost). Propagates
/// BoundInapplicable.
GapReport check_bound(double train_error, double test_error, std::optional<double> rho,
                      std::size_t d, std::size_t m, double delta = kDefaultDelta);

/// Like check_bound, but records an inapplicable cell instead of throwing:
/// applicable = false, holds = false, epsilon_boost = NaN.
GapReport check_bound_or_mark(double train_error, double test_error, std::optional<double> rho,
                              std::size_t d, std::size_t m, double delta = kDefaultDelta);

/// Fraction of applicable reports that hold. Inapplicable reports are left
/// out of the denominator; throws if no applicable report remains.
double confidence(std::span<const GapReport> reports);

}  // namespace boostbound
