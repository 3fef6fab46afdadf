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

#include "boostbound/bound.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace boostbound {

namespace {

// ln(e m / d) written as 1 + ln(m / d): exact at m = d.
double log_capacity(std::size_t d, std::size_t m) {
  return 1.0 + std::log(static_cast<double>(m) / static_cast<double>(d));
}

}  // namespace

bool bound_applicable(std::size_t d, std::size_t m) {
  return d > 0 && m > 0 && log_capacity(d, m) >= 0.0;
}

double epsilon_boost(const BoundInput& input) {
  if (input.d == 0 || input.m == 0) {
    throw std::invalid_argument(
        fmt::format("epsilon_boost: d and m must be >= 1 (d={}, m={})", input.d, input.m));
  }
  if (!(input.delta > 0.0 && input.delta <= 1.0)) {
    throw std::invalid_argument(
        fmt::format("epsilon_boost: delta must lie in (0, 1], got {}", input.delta));
  }
  if (input.rho && !(*input.rho >= 0.0)) {
    throw std::invalid_argument(fmt::format("epsilon_boost: rho must be >= 0, got {}", *input.rho));
  }
  const double d = static_cast<double>(input.d);
  const double m = static_cast<double>(input.m);
  const double log_term = log_capacity(input.d, input.m);
  if (log_term < 0.0) {
    throw BoundInapplicable(fmt::format(
        "epsilon_boost: bound inapplicable for d={} > e*m (m={})", input.d, input.m));
  }
  if (!input.rho || *input.rho == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double complexity = (2.0 / *input.rho) * std::sqrt(2.0 * d * log_term / m);
  const double confidence_term = std::sqrt(-std::log(input.delta) / (2.0 * m));
  return complexity + confidence_term;
}

double gap(double train_error, double test_error) {
  if (!(train_error >= 0.0 && train_error <= 1.0 && test_error >= 0.0 && test_error <= 1.0)) {
    throw std::invalid_argument(fmt::format(
        "gap: errors must lie in [0, 1] (train={}, test={})", train_error, test_error));
  }
  return test_error - train_error;
}

GapReport check_bound(double train_error, double test_error, std::optional<double> rho,
                      std::size_t d, std::size_t m, double delta) {
  GapReport report;
  report.train_error = train_error;
  report.test_error = test_error;
  report.delta_r = gap(train_error, test_error);
  report.rho = rho;
  report.epsilon_boost = epsilon_boost({rho, d, m, delta});
  report.holds = report.delta_r <= report.epsilon_boost;
  report.applicable = true;
  return report;
}

GapReport check_bound_or_mark(double train_error, double test_error, std::optional<double> rho,
                              std::size_t d, std::size_t m, double delta) {
  try {
    return check_bound(train_error, test_error, rho, d, m, delta);
  } catch (const BoundInapplicable&) {
    GapReport report;
    report.train_error = train_error;
    report.test_error = test_error;
    report.delta_r = gap(train_error, test_error);
    report.rho = rho;
    report.epsilon_boost = std::numeric_limits<double>::quiet_NaN();
    report.holds = false;
    report.applicable = false;
    return report;
  }
}

double confidence(std::span<const GapReport> reports) {
  std::size_t applicable = 0;
  std::size_t held = 0;
  for (const auto& r : reports) {
    if (!r.applicable) {
      continue;
    }
    ++applicable;
    held += r.holds ? 1 : 0;
  }
  if (applicable == 0) {
    throw std::invalid_argument("confidence: no applicable reports");
  }
  return static_cast<double>(held) / static_cast<double>(applicable);
}

}  // namespace boostbound
