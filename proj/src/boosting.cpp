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

#include "boostbound/boosting.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "boostbound/kernels.hpp"
#include "boostbound/rng.hpp"

namespace boostbound {

namespace {

void require_open_unit(double epsilon, const char* what) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DataError(fmt::format("{}: epsilon must lie in (0, 1), got {}", what, epsilon));
  }
}

void require_dims(const Ensemble& ensemble, std::size_t n, const char* what) {
  if (ensemble.rounds.empty()) {
    throw DataError(fmt::format("{}: ensemble has no rounds", what));
  }
  if (ensemble.rounds.front().hypothesis.weights.size() != n) {
    throw DataError(fmt::format("{}: input has {} features, ensemble expects {}", what, n,
                                ensemble.rounds.front().hypothesis.weights.size()));
  }
}

}  // namespace

int BoostRound::output(std::span<const double> x) const {
  const int h = predict(hypothesis, x);
  return flipped ? -h : h;
}

double Ensemble::alpha_l1() const {
  double total = 0.0;
  for (const auto& round : rounds) {
    total += std::abs(round.alpha);
  }
  return total;
}

double compute_alpha(double epsilon) {
  require_open_unit(epsilon, "compute_alpha");
  return 0.5 * std::log((1.0 - epsilon) / epsilon);
}

double compute_z(double epsilon) {
  require_open_unit(epsilon, "compute_z");
  return 2.0 * std::sqrt(epsilon * (1.0 - epsilon));
}

Distribution update_distribution_agreement(const Distribution& dist, double alpha,
                                           std::span<const double> agreement) {
  if (agreement.size() != dist.size()) {
    throw DataError(fmt::format("update_distribution: {} agreements for {} weights",
                                agreement.size(), dist.size()));
  }
  if (!std::isfinite(alpha)) {
    throw DataError("update_distribution: alpha must be finite");
  }
  if (alpha == 0.0) {
    return dist;
  }
  std::vector<double> next(dist.values().begin(), dist.values().end());
  kernels::reweight(next, agreement, std::exp(-alpha), std::exp(alpha));
  const double mass = kernels::sum(next);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw DataError(fmt::format("update_distribution: unnormalized mass is {}", mass));
  }
  kernels::divide(next, mass);
  return Distribution(std::move(next));
}

Distribution update_distribution(const Distribution& dist, double alpha,
                                 std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != dist.size() || labels.size() != dist.size()) {
    throw DataError(fmt::format("update_distribution: {} predictions and {} labels for {} weights",
                                predictions.size(), labels.size(), dist.size()));
  }
  std::vector<double> agree(dist.size());
  for (std::size_t i = 0; i < agree.size(); ++i) {
    agree[i] = static_cast<double>(predictions[i] * labels[i]);
  }
  return update_distribution_agreement(dist, alpha, agree);
}

TrainTrace train_adaboost(const Dataset& train, const BoostConfig& config) {
  if (train.empty()) {
    throw DataError("train_adaboost: training set is empty");
  }
  if (config.rounds == 0) {
    throw DataError("train_adaboost: number of rounds must be >= 1");
  }
  if (!(config.epsilon_floor > 0.0 && config.epsilon_floor < 0.5)) {
    throw DataError(fmt::format("train_adaboost: epsilon floor must lie in (0, 1/2), got {}",
                                config.epsilon_floor));
  }

  TrainTrace trace;
  trace.ensemble.rounds.reserve(config.rounds);
  Distribution dist = Distribution::uniform(train.rows());
  if (config.keep_distributions) {
    trace.distributions.reserve(config.rounds + 1);
    trace.distributions.push_back(dist);
  }

  for (std::size_t t = 0; t < config.rounds; ++t) {
    PerceptronConfig weak = config.weak;
    weak.seed = derive_seed(config.weak.seed, seed_stream::kRound, t);

    BoostRound round;
    round.hypothesis = fit_perceptron(train, dist, weak);
    std::vector<double> agree = agreement(round.hypothesis, train);
    round.raw_epsilon = std::min(1.0, kernels::masked_sum(dist.values(), agree));

    double epsilon = round.raw_epsilon;
    if (epsilon > 0.5) {
      round.flipped = true;
      epsilon = 1.0 - epsilon;
      for (double& a : agree) {
        a = -a;
      }
    }
    round.epsilon = std::clamp(epsilon, config.epsilon_floor, 0.5);
    round.clamped = round.epsilon != epsilon;
    round.alpha = compute_alpha(round.epsilon);
    round.z = compute_z(round.epsilon);

    dist = update_distribution_agreement(dist, round.alpha, agree);
    if (config.keep_distributions) {
      trace.distributions.push_back(dist);
    }
    trace.ensemble.rounds.push_back(std::move(round));
  }
  return trace;
}

double ensemble_score(const Ensemble& ensemble, std::span<const double> x) {
  require_dims(ensemble, x.size(), "ensemble_score");
  double score = 0.0;
  for (const auto& round : ensemble.rounds) {
    score += round.alpha * round.output(x);
  }
  return score;
}

int ensemble_predict(const Ensemble& ensemble, std::span<const double> x) {
  return sign_label(ensemble_score(ensemble, x));
}

std::vector<double> ensemble_scores(const Ensemble& ensemble, const Dataset& data) {
  require_dims(ensemble, data.cols(), "ensemble_scores");
  std::vector<double> scores(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    scores[i] = ensemble_score(ensemble, data.row(i));
  }
  return scores;
}

double misclassification_rate(const Ensemble& ensemble, const Dataset& data) {
  if (data.empty()) {
    throw DataError("misclassification_rate: dataset is empty");
  }
  const auto scores = ensemble_scores(ensemble, data);
  std::size_t mistakes = 0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    mistakes += sign_label(scores[i]) != data.label(i) ? 1 : 0;
  }
  return static_cast<double>(mistakes) / static_cast<double>(data.rows());
}

std::optional<double> l1_margin(const Ensemble& ensemble, const Dataset& data) {
  if (data.empty()) {
    throw DataError("l1_margin: dataset is empty");
  }
  const double norm = ensemble.alpha_l1();
  require_dims(ensemble, data.cols(), "l1_margin");
  if (norm == 0.0) {
    return std::nullopt;
  }
  const auto scores = ensemble_scores(ensemble, data);
  double smallest = std::abs(scores.front());
  for (const double s : scores) {
    smallest = std::min(smallest, std::abs(s));
  }
  return smallest / norm;
}

}  // namespace boostbound
