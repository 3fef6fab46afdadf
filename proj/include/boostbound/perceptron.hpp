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
#include <cstdint>
#include <span>
#include <vector>

#include "boostbound/dataset.hpp"

namespace boostbound {

/// Sample weights over the rows of a dataset: nonnegative, summing to 1
/// within 1e-9. Checked on construction.
class Distribution {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit Distribution(std::vector<double> probabilities);
  static Distribution uniform(std::size_t m);

  std::size_t size() const { return probabilities_.size(); }
  double operator[](std::size_t i) const { return probabilities_[i]; }
  std::span<const double> values() const { return probabilities_; }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> probabilities_;
};

/// Linear threshold unit; predicts sign(w.x + b) with sign(0) = +1.
struct PerceptronModel {
  std::vector<double> weights;
  double bias = 0.0;

  friend bool operator==(const PerceptronModel&, const PerceptronModel&) = default;
};

struct PerceptronConfig {
  std::size_t epochs = 10;
  std::uint64_t seed = 0;
};

/// Label convention shared by every classifier: sign with sign(0) = +1.
inline int sign_label(double score) { return score >= 0.0 ? 1 : -1; }

int predict(const PerceptronModel& model, std::span<const double> x);

/// Perceptron trained against sample weights. Starts from zero; each epoch
/// visits the rows in a fresh seeded shuffle and, on a mistake at row i,
/// steps by m * D(i) * y_i along (x_i, 1). Rows with D(i) = 0 are skipped.
PerceptronModel fit_perceptron(const Dataset& train, const Distribution& dist,
                               const PerceptronConfig& config);

/// Same update rule with explicit visit orders, one per epoch. Each order
/// may list any subset of row indices. fit_perceptron draws its orders
/// from the seed and delegates here.
PerceptronModel fit_perceptron_with_orders(const Dataset& train, const Distribution& dist,
                                           std::span<const std::vector<std::size_t>> epoch_orders);

/// The visit orders fit_perceptron uses for a given row count and config.
std::vector<std::vector<std::size_t>> perceptron_visit_orders(std::size_t m,
                                                              const PerceptronConfig& config);

/// y_i * h(x_i) for every row, as +1.0 (correct) or -1.0 (mistake).
std::vector<double> agreement(const PerceptronModel& model, const Dataset& data);

/// Sum of D(i) over misclassified rows.
double weighted_error(const PerceptronModel& model, const Dataset& data, const Distribution& dist);

}  // namespace boostbound
