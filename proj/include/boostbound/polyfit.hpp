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
#include <span>
#include <utility>
#include <vector>

namespace boostbound {

/// Least-squares polynomial in a rescaled abscissa: t = 2 (x - lo) / (hi - lo) - 1
/// maps the data range onto [-1, 1]; `coefficients[k]` multiplies t^k.
struct PolyFit {
  std::vector<double> coefficients;
  std::size_t order = 10;
  std::pair<double, double> x_scale{-1.0, 1.0};

  double operator()(double x) const;
};

inline constexpr std::size_t kDefaultFitOrder = 10;

/// Solves the least-squares problem with a column-pivoted Householder QR
/// of the Vandermonde matrix. Needs at least order + 1 distinct abscissae.
PolyFit polyfit(std::span<const std::pair<double, double>> points,
                std::size_t order = kDefaultFitOrder);

/// Sum of squared residuals of `fit` over `points`.
double residual_sum_of_squares(const PolyFit& fit, std::span<const std::pair<double, double>> points);

}  // namespace boostbound
