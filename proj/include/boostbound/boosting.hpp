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
#include <optional>
#include <span>
#include <vector>

#include "boostbound/dataset.hpp"
#include "boostbound/perceptron.hpp"

namespace boostbound {

/// One boosting round. `epsilon` is the effective weighted error after the
/// flip policy and clamping; `alpha` and `z` are computed from it.
struct BoostRound {
  PerceptronModel hypothesis;
  double alpha = 0.0;
  double epsilon = 0.5;
  double z = 1.0;
  bool flipped = false;
  /// Weighted error of the unflipped hypothesis, before clamping.
  double raw_epsilon = 0.5;
  /// True when the epsilon floor changed the effective error.
  bool clamped = false;

  /// h_t(x) with the flip applied.
  int output(std::span<const double> x) const;

  friend bool operator==(const BoostRound&, const BoostRound&) = default;
};

/// f = sum_t alpha_t h_t.
struct Ensemble {
  std::vector<BoostRound> rounds;

  std::size_t size() const { return rounds.size(); }
  double alpha_l1() const;

  friend bool operator==(const Ensemble&, const Ensemble&) = default;
};

struct TrainTrace {
  /// D_1 ... D_{T+1}; empty when the run was configured not to keep them.
  std::vector<Distribution> distributions;
  Ensemble ensemble;

  friend bool operator==(const TrainTrace&, const TrainTrace&) = default;
};

struct BoostConfig {
  std::size_t rounds = 50;
  /// `weak.seed` is the master seed; round t trains with
  /// derive_seed(weak.seed, seed_stream::kRound, t).
  PerceptronConfig weak;
  /// Lower clamp for epsilon so alpha stays finite on separable rounds.
  double epsilon_floor = 1e-10;
  bool keep_distributions = true;
};

/// 1/2 ln((1 - eps) / eps); requires 0 < eps < 1.
double compute_alpha(double epsilon);

/// 2 sqrt(eps (1 - eps)); requires 0 < eps < 1.
double compute_z(double epsilon);

/// D'(i) proportional to D(i) exp(-alpha y_i h(x_i)), normalized by its
/// own sum rather than the closed-form Z.
Distribution update_distribution(const Distribution& dist, double alpha,
                                 std::span<const int> predictions, std::span<const int> labels);

/// Same update, with y_i h(x_i) already formed as +-1.0.
Distribution update_distribution_agreement(const Distribution& dist, double alpha,
                                           std::span<const double> agreement);

/// AdaBoost with weighted-perceptron weak learners. Rounds whose weighted
/// error exceeds 1/2 are negated, and the error is clamped into
/// [epsilon_floor, 1/2] before alpha and Z are computed.
TrainTrace train_adaboost(const Dataset& train, const BoostConfig& config);

double ensemble_score(const Ensemble& ensemble, std::span<const double> x);
int ensemble_predict(const Ensemble& ensemble, std::span<const double> x);

/// ensemble_score for every row of `data`.
std::vector<double> ensemble_scores(const Ensemble& ensemble, const Dataset& data);

double misclassification_rate(const Ensemble& ensemble, const Dataset& data);

/// min_i |f(x_i)| / sum_t |alpha_t|. Returns nullopt ("undefined margin")
/// when every alpha is zero.
std::optional<double> l1_margin(const Ensemble& ensemble, const Dataset& data);

}  // namespace boostbound
