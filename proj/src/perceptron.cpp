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

#include "boostbound/perceptron.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "boostbound/kernels.hpp"
#include "boostbound/rng.hpp"

namespace boostbound {

Distribution::Distribution(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  double total = 0.0;
  for (std::size_t i = 0; i < probabilities_.size(); ++i) {
    const double p = probabilities_[i];
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DataError(fmt::format("distribution: entry {} is {}, expected a finite value >= 0", i, p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw DataError(fmt::format("distribution: entries sum to {:.17g}, expected 1", total));
  }
}

Distribution Distribution::uniform(std::size_t m) {
  if (m == 0) {
    throw DataError("distribution: cannot build a uniform distribution over 0 rows");
  }
  return Distribution(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

int predict(const PerceptronModel& model, std::span<const double> x) {
  if (x.size() != model.weights.size()) {
    throw DataError(fmt::format("predict: input has {} features, model expects {}", x.size(),
                                model.weights.size()));
  }
  return sign_label(kernels::dot(model.weights, x) + model.bias);
}

std::vector<std::vector<std::size_t>> perceptron_visit_orders(std::size_t m,
                                                              const PerceptronConfig& config) {
  if (config.epochs == 0) {
    throw DataError("fit_perceptron: epochs must be >= 1");
  }
  Rng rng(config.seed);
  std::vector<std::vector<std::size_t>> orders(config.epochs, std::vector<std::size_t>(m));
  for (auto& order : orders) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
  }
  return orders;
}

PerceptronModel fit_perceptron_with_orders(const Dataset& train, const Distribution& dist,
                                           std::span<const std::vector<std::size_t>> epoch_orders) {
  if (dist.size() != train.rows()) {
    throw DataError(fmt::format("fit_perceptron: distribution has {} entries for {} rows",
                                dist.size(), train.rows()));
  }
  const double m = static_cast<double>(train.rows());
  PerceptronModel model{std::vector<double>(train.cols(), 0.0), 0.0};
  for (const auto& order : epoch_orders) {
    for (const std::size_t i : order) {
      if (i >= train.rows()) {
        throw DataError(fmt::format("fit_perceptron: visit index {} out of range", i));
      }
      if (dist[i] == 0.0) {
        continue;
      }
      const auto x = train.row(i);
      const int y = train.label(i);
      if (sign_label(kernels::dot(model.weights, x) + model.bias) != y) {
        const double step = m * dist[i] * y;
        kernels::axpy(step, x, model.weights);
        model.bias += step;
      }
    }
  }
  return model;
}

PerceptronModel fit_perceptron(const Dataset& train, const Distribution& dist,
                               const PerceptronConfig& config) {
  const auto orders = perceptron_visit_orders(train.rows(), config);
  return fit_perceptron_with_orders(train, dist, orders);
}

std::vector<double> agreement(const PerceptronModel& model, const Dataset& data) {
  if (data.cols() != model.weights.size()) {
    throw DataError(fmt::format("agreement: data has {} features, model expects {}", data.cols(),
                                model.weights.size()));
  }
  std::vector<double> out(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const int h = sign_label(kernels::dot(model.weights, data.row(i)) + model.bias);
    out[i] = h == data.label(i) ? 1.0 : -1.0;
  }
  return out;
}

double weighted_error(const PerceptronModel& model, const Dataset& data, const Distribution& dist) {
  if (dist.size() != data.rows()) {
    throw DataError(fmt::format("weighted_error: distribution has {} entries for {} rows",
                                dist.size(), data.rows()));
  }
  const auto a = agreement(model, data);
  if (std::all_of(a.begin(), a.end(), [](double v) { return v < 0.0; })) {
    return 1.0;  // rounding in the sum must not leave this at 1 - ulp
  }
  return std::min(1.0, kernels::masked_sum(dist.values(), a));
}

}  // namespace boostbound
