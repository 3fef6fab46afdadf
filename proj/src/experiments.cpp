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

#include "boostbound/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <limits>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "boostbound/rng.hpp"

namespace boostbound {

namespace {

constexpr double kEpsilonFloor = 1e-10;

/// Runs task(i) for i in [0, n) on up to `workers` threads. Results are
/// written by index, so completion order never matters. The exception of
/// the lowest failing index is rethrown.
template <typename Task>
void parallel_for(std::size_t n, std::size_t workers, Task&& task) {
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(drain);
    }
  }
  for (const auto& error : errors) {
    if (error) {
      std::rethrow_exception(error);
    }
  }
}

/// Seed of a grid cell, keyed by the swept value and the repeat index.
std::uint64_t cell_seed(std::uint64_t master, std::size_t value, std::size_t repeat) {
  return derive_seed(derive_seed(master, seed_stream::kCell, value), seed_stream::kCell, repeat);
}

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               start)
      .count();
}

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw DataError(message);
  }
}

void validate_options(const SweepOptions& options) {
  require(options.rounds >= 1, "sweep: rounds must be >= 1");
  require(options.epochs >= 1, "sweep: epochs must be >= 1");
  require(options.repeats >= 1, "sweep: repeats must be >= 1");
  require(options.delta > 0.0 && options.delta <= 1.0, "sweep: delta must lie in (0, 1]");
}

BoostConfig boost_config(const SweepOptions& options, std::size_t rounds, std::uint64_t seed) {
  BoostConfig config;
  config.rounds = rounds;
  config.weak.epochs = options.epochs;
  config.weak.seed = seed;
  config.epsilon_floor = kEpsilonFloor;
  config.keep_distributions = false;
  return config;
}

struct CellResult {
  GapReport report;
  std::int64_t wall_time_ms = 0;
};

CellResult train_and_check(const Dataset& train, const Dataset& test, std::size_t d,
                           const SweepOptions& options, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const auto trace = train_adaboost(
      train, boost_config(options, options.rounds, derive_seed(seed, seed_stream::kBoost, 0)));
  const auto& ensemble = trace.ensemble;
  CellResult result;
  result.report = check_bound_or_mark(misclassification_rate(ensemble, train),
                                      misclassification_rate(ensemble, test),
                                      l1_margin(ensemble, train), d, train.rows(), options.delta);
  result.wall_time_ms = elapsed_ms(start);
  return result;
}

SplitPair synthetic_split(std::size_t d, std::size_t m, const SweepOptions& options,
                          std::uint64_t seed) {
  SyntheticConfig config;
  config.n_features = d - 1;
  config.m_total = 2 * m;
  config.class_sep = options.class_sep;
  config.flip_y = options.flip_y;
  config.seed = derive_seed(seed, seed_stream::kData, 0);
  return split_half(generate_synthetic(config), derive_seed(seed, seed_stream::kSplit, 0));
}

struct Cell {
  std::size_t value = 0;
  std::size_t repeat = 0;
};

std::vector<Cell> cells_for(const Grid& grid, std::size_t repeats) {
  std::vector<Cell> cells;
  for (const std::size_t v : grid.values()) {
    for (std::size_t r = 0; r < repeats; ++r) {
      cells.push_back({v, r});
    }
  }
  return cells;
}

}  // namespace

std::string_view to_string(DataSource source) {
  return source == DataSource::synthetic ? "synthetic" : "real";
}

std::vector<std::size_t> Grid::values() const {
  require(step >= 1, fmt::format("grid: step must be >= 1, got {}", step));
  require(first <= last, fmt::format("grid: first value {} exceeds last value {}", first, last));
  std::vector<std::size_t> out;
  for (std::size_t v = first; v <= last; v += step) {
    out.push_back(v);
    if (last - v < step) {
      break;
    }
  }
  return out;
}

void summarize(SweepResult& result) {
  std::vector<GapReport> reports;
  reports.reserve(result.records.size());
  result.inapplicable_count = 0;
  for (const auto& record : result.records) {
    reports.push_back(record.gap_report);
    result.inapplicable_count += record.gap_report.applicable ? 0 : 1;
  }
  if (result.inapplicable_count < reports.size()) {
    result.confidence = confidence(reports);
  } else {
    result.confidence.reset();
  }
}

SweepResult run_iteration_sweep(std::size_t d, std::size_t m, std::size_t T_max,
                                const SweepOptions& options) {
  validate_options(options);
  require(d >= 2, "iteration sweep: d must be >= 2");
  require(m >= 1, "iteration sweep: m must be >= 1");
  require(T_max >= 1, "iteration sweep: T_max must be >= 1");

  struct Curve {
    std::vector<double> train_error, test_error;
    std::vector<std::optional<double>> rho;
  };
  std::vector<Curve> curves(options.repeats);
  parallel_for(options.repeats, options.workers, [&](std::size_t r) {
    const std::uint64_t seed = cell_seed(options.master_seed, 0, r);
    const auto split = synthetic_split(d, m, options, seed);
    const auto trace = train_adaboost(
        split.train, boost_config(options, T_max, derive_seed(seed, seed_stream::kBoost, 0)));

    // Running scores of the T-round prefix; accumulation order matches
    // ensemble_score, so each prefix scores exactly like a truncated model.
    std::vector<double> train_scores(split.train.rows(), 0.0);
    std::vector<double> test_scores(split.test.rows(), 0.0);
    double alpha_norm = 0.0;
    Curve& curve = curves[r];
    for (const auto& round : trace.ensemble.rounds) {
      alpha_norm += std::abs(round.alpha);
      std::size_t train_mistakes = 0;
      double smallest = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < split.train.rows(); ++i) {
        train_scores[i] += round.alpha * round.output(split.train.row(i));
        train_mistakes += sign_label(train_scores[i]) != split.train.label(i) ? 1 : 0;
        smallest = std::min(smallest, std::abs(train_scores[i]));
      }
      std::size_t test_mistakes = 0;
      for (std::size_t i = 0; i < split.test.rows(); ++i) {
        test_scores[i] += round.alpha * round.output(split.test.row(i));
        test_mistakes += sign_label(test_scores[i]) != split.test.label(i) ? 1 : 0;
      }
      curve.train_error.push_back(static_cast<double>(train_mistakes) /
                                  static_cast<double>(split.train.rows()));
      curve.test_error.push_back(static_cast<double>(test_mistakes) /
                                 static_cast<double>(split.test.rows()));
      curve.rho.push_back(alpha_norm > 0.0 ? std::optional<double>(smallest / alpha_norm)
                                           : std::nullopt);
    }
  });

  SweepResult result;
  result.experiment_id = "t-sweep";
  const double n = static_cast<double>(options.repeats);
  for (std::size_t t = 0; t < T_max; ++t) {
    double train = 0.0, test = 0.0, rho = 0.0;
    std::size_t defined = 0;
    for (const auto& curve : curves) {
      train += curve.train_error[t];
      test += curve.test_error[t];
      if (curve.rho[t]) {
        rho += *curve.rho[t];
        ++defined;
      }
    }
    const std::optional<double> mean_rho =
        defined > 0 ? std::optional<double>(rho / static_cast<double>(defined)) : std::nullopt;
    RunRecord record;
    record.experiment_id = result.experiment_id;
    record.params = {t + 1, m, d, options.delta, options.master_seed, DataSource::synthetic};
    record.gap_report = check_bound_or_mark(std::clamp(train / n, 0.0, 1.0),
                                            std::clamp(test / n, 0.0, 1.0), mean_rho, d, m,
                                            options.delta);
    result.records.push_back(std::move(record));
  }
  // Mean curves only; the iteration sweep carries no confidence verdict.
  result.inapplicable_count = static_cast<std::size_t>(std::count_if(
      result.records.begin(), result.records.end(),
      [](const RunRecord& r) { return !r.gap_report.applicable; }));
  return result;
}

SweepResult run_sample_size_sweep(std::size_t d, const Grid& m_grid, const SweepOptions& options) {
  validate_options(options);
  require(d >= 2, "sample-size sweep: d must be >= 2");
  require(m_grid.first >= 2, "sample-size sweep: m_min must be >= 2");
  const auto cells = cells_for(m_grid, options.repeats);

  SweepResult result;
  result.experiment_id = "m-sweep";
  result.records.resize(cells.size());
  parallel_for(cells.size(), options.workers, [&](std::size_t c) {
    const auto [m, repeat] = cells[c];
    const std::uint64_t seed = cell_seed(options.master_seed, m, repeat);
    const auto split = synthetic_split(d, m, options, seed);
    const auto cell = train_and_check(split.train, split.test, d, options, seed);
    result.records[c] = {result.experiment_id,
                         {options.rounds, m, d, options.delta, seed, DataSource::synthetic},
                         cell.report,
                         cell.wall_time_ms};
  });
  summarize(result);
  return result;
}

SweepResult run_dimension_sweep(std::size_t m, const Grid& d_grid, const SweepOptions& options) {
  validate_options(options);
  require(m >= 1, "dimension sweep: m must be >= 1");
  require(d_grid.first >= 2, "dimension sweep: d_min must be >= 2");
  const auto cells = cells_for(d_grid, options.repeats);

  SweepResult result;
  result.experiment_id = "d-sweep";
  result.records.resize(cells.size());
  parallel_for(cells.size(), options.workers, [&](std::size_t c) {
    const auto [d, repeat] = cells[c];
    const std::uint64_t seed = cell_seed(options.master_seed, d, repeat);
    const auto split = synthetic_split(d, m, options, seed);
    const auto cell = train_and_check(split.train, split.test, d, options, seed);
    result.records[c] = {result.experiment_id,
                         {options.rounds, m, d, options.delta, seed, DataSource::synthetic},
                         cell.report,
                         cell.wall_time_ms};
  });
  summarize(result);
  return result;
}

FeatureRanking rank_features(const TrainTrace& trace, std::size_t n_features) {
  require(!trace.ensemble.rounds.empty(), "rank_features: trace has no rounds");
  std::vector<double> importance(n_features, 0.0);
  for (const auto& round : trace.ensemble.rounds) {
    const auto& w = round.hypothesis.weights;
    require(w.size() == n_features,
            fmt::format("rank_features: hypothesis has {} weights, expected {}", w.size(),
                        n_features));
    for (std::size_t j = 0; j < n_features; ++j) {
      importance[j] += round.alpha * std::abs(w[j]);
    }
  }
  const double total = std::accumulate(importance.begin(), importance.end(), 0.0);
  for (double& v : importance) {
    v = total > 0.0 ? v / total : 1.0 / static_cast<double>(n_features);
  }
  FeatureRanking ranking;
  ranking.order.resize(n_features);
  std::iota(ranking.order.begin(), ranking.order.end(), std::size_t{0});
  std::stable_sort(ranking.order.begin(), ranking.order.end(),
                   [&](std::size_t a, std::size_t b) { return importance[a] > importance[b]; });
  ranking.importances = std::move(importance);
  return ranking;
}

SweepResult run_real_data(const Dataset& dataset, RealMode mode, const Grid& grid,
                          const SweepOptions& options) {
  validate_options(options);
  require(dataset.rows() >= 2, "real-data sweep: dataset needs at least 2 rows");
  require(dataset.cols() >= 1, "real-data sweep: dataset has no features");
  const auto split = split_half(dataset, derive_seed(options.master_seed, seed_stream::kSplit, 0));
  const auto cells = cells_for(grid, options.repeats);

  SweepResult result;
  result.records.resize(cells.size());

  if (mode == RealMode::m_sweep) {
    result.experiment_id = "real-m";
    require(grid.first >= 1, "real-data m-sweep: m_min must be >= 1");
    const auto values = grid.values();
    require(values.back() <= split.train.rows(),
            fmt::format("real-data m-sweep: m={} exceeds the train half ({} rows)", values.back(),
                        split.train.rows()));
    const std::size_t d = dataset.cols() + 1;
    parallel_for(cells.size(), options.workers, [&](std::size_t c) {
      const auto [m, repeat] = cells[c];
      const std::uint64_t seed = cell_seed(options.master_seed, m, repeat);
      std::vector<std::size_t> rows(split.train.rows());
      std::iota(rows.begin(), rows.end(), std::size_t{0});
      Rng rng(derive_seed(seed, seed_stream::kSubsample, 0));
      rng.shuffle(std::span<std::size_t>(rows));
      rows.resize(m);
      const auto subsample = split.train.take_rows(rows);
      const auto cell = train_and_check(subsample, split.test, d, options, seed);
      result.records[c] = {result.experiment_id,
                           {options.rounds, m, d, options.delta, seed, DataSource::real},
                           cell.report,
                           cell.wall_time_ms};
    });
  } else {
    result.experiment_id = "real-d";
    require(grid.first >= 2, "real-data d-sweep: d_min must be >= 2");
    const auto values = grid.values();
    require(values.back() - 1 <= dataset.cols(),
            fmt::format("real-data d-sweep: d={} needs {} features, dataset has {}", values.back(),
                        values.back() - 1, dataset.cols()));
    const auto reference = train_adaboost(
        split.train,
        boost_config(options, options.rounds,
                     derive_seed(options.master_seed, seed_stream::kBoost, 0)));
    const auto ranking = rank_features(reference, dataset.cols());
    const std::size_t m = split.train.rows();
    parallel_for(cells.size(), options.workers, [&](std::size_t c) {
      const auto [d, repeat] = cells[c];
      const std::uint64_t seed = cell_seed(options.master_seed, d, repeat);
      const std::span<const std::size_t> prefix(ranking.order.data(), d - 1);
      const auto cell = train_and_check(select_features(split.train, prefix),
                                        select_features(split.test, prefix), d, options, seed);
      result.records[c] = {result.experiment_id,
                           {options.rounds, m, d, options.delta, seed, DataSource::real},
                           cell.report,
                           cell.wall_time_ms};
    });
  }
  summarize(result);
  return result;
}

std::string format_percent(double fraction) { return fmt::format("{:.1f}%", fraction * 100.0); }

std::vector<ConfidenceRow> confidence_table(
    std::span<const std::pair<std::string, SweepResult>> sweeps) {
  require(!sweeps.empty(), "confidence_table: no sweeps given");
  std::vector<ConfidenceRow> rows;
  for (const auto& [label, sweep] : sweeps) {
    require(sweep.confidence.has_value(),
            fmt::format("confidence_table: sweep '{}' has no confidence", label));
    rows.push_back({label, *sweep.confidence, format_percent(*sweep.confidence)});
  }
  return rows;
}

std::string_view swept_parameter(std::string_view experiment_id) {
  if (experiment_id == "t-sweep") return "T";
  if (experiment_id == "m-sweep" || experiment_id == "real-m") return "m";
  if (experiment_id == "d-sweep" || experiment_id == "real-d") return "d";
  throw DataError(fmt::format("unknown experiment id '{}'", experiment_id));
}

double swept_value(const RunRecord& record) {
  const auto param = swept_parameter(record.experiment_id);
  const std::size_t v = param == "T" ? record.params.T : param == "m" ? record.params.m : record.params.d;
  return static_cast<double>(v);
}

std::optional<double> median_margin(const SweepResult& result) {
  std::vector<double> margins;
  for (const auto& record : result.records) {
    const auto& report = record.gap_report;
    if (report.applicable && report.rho && *report.rho > 0.0) {
      margins.push_back(*report.rho);
    }
  }
  if (margins.empty()) {
    return std::nullopt;
  }
  std::sort(margins.begin(), margins.end());
  const std::size_t mid = margins.size() / 2;
  return margins.size() % 2 == 1 ? margins[mid] : 0.5 * (margins[mid - 1] + margins[mid]);
}

std::vector<std::pair<double, double>> bound_curve(const SweepResult& result) {
  std::vector<std::pair<double, double>> curve;
  const auto rho = median_margin(result);
  if (!rho || result.records.empty()) {
    return curve;
  }
  // Distinct swept values, each with the (d, m, delta) of its first record.
  std::set<double> seen;
  std::vector<const RunRecord*> firsts;
  for (const auto& record : result.records) {
    if (seen.insert(swept_value(record)).second) {
      firsts.push_back(&record);
    }
  }
  std::sort(firsts.begin(), firsts.end(), [](const RunRecord* a, const RunRecord* b) {
    return swept_value(*a) < swept_value(*b);
  });
  for (const RunRecord* record : firsts) {
    const auto& p = record->params;
    if (!bound_applicable(p.d, p.m)) {
      continue;
    }
    const double y = epsilon_boost({rho, p.d, p.m, p.delta});
    if (std::isfinite(y)) {
      curve.emplace_back(swept_value(*record), y);
    }
  }
  return curve;
}

std::vector<std::pair<double, double>> gap_points(const SweepResult& result) {
  std::vector<std::pair<double, double>> points;
  points.reserve(result.records.size());
  for (const auto& record : result.records) {
    points.emplace_back(swept_value(record), record.gap_report.delta_r);
  }
  return points;
}

std::optional<PolyFit> display_fit(const SweepResult& result) {
  const auto points = gap_points(result);
  std::set<double> xs;
  for (const auto& p : points) {
    xs.insert(p.first);
  }
  if (xs.size() < 2) {
    return std::nullopt;
  }
  return polyfit(points, std::min(kDefaultFitOrder, xs.size() - 1));
}

}  // namespace boostbound
