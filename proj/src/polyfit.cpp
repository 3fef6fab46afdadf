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

#include "boostbound/polyfit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace boostbound {

double PolyFit::operator()(double x) const {
  const auto [lo, hi] = x_scale;
  const double t = hi > lo ? 2.0 * (x - lo) / (hi - lo) - 1.0 : 0.0;
  double value = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    value = value * t + *it;
  }
  return value;
}

PolyFit polyfit(std::span<const std::pair<double, double>> points, std::size_t order) {
  if (order == 0) {
    throw std::invalid_argument("polyfit: order must be >= 1");
  }
  std::set<double> distinct;
  for (const auto& [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw std::invalid_argument("polyfit: points must be finite");
    }
    distinct.insert(x);
  }
  if (distinct.size() < order + 1) {
    throw std::invalid_argument(fmt::format(
        "polyfit: order {} needs {} distinct abscissae, got {}", order, order + 1, distinct.size()));
  }

  PolyFit fit;
  fit.order = order;
  fit.x_scale = {*distinct.begin(), *distinct.rbegin()};
  const auto [lo, hi] = fit.x_scale;

  const auto n = static_cast<Eigen::Index>(points.size());
  const auto k = static_cast<Eigen::Index>(order + 1);
  Eigen::MatrixXd vandermonde(n, k);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& [x, y] = points[static_cast<std::size_t>(i)];
    const double t = 2.0 * (x - lo) / (hi - lo) - 1.0;
    double power = 1.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      vandermonde(i, j) = power;
      power *= t;
    }
    rhs(i) = y;
  }
  const Eigen::VectorXd solution = vandermonde.colPivHouseholderQr().solve(rhs);
  fit.coefficients.assign(solution.data(), solution.data() + solution.size());
  return fit;
}

double residual_sum_of_squares(const PolyFit& fit, std::span<const std::pair<double, double>> points) {
  double total = 0.0;
  for (const auto& [x, y] : points) {
    const double r = fit(x) - y;
    total += r * r;
  }
  return total;
}

}  // namespace boostbound
