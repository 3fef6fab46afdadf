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
#include <string>
#include <utility>
#include <vector>

#include "boostbound/boosting.hpp"
#include "boostbound/bound.hpp"
#include "boostbound/dataset.hpp"
#include "boostbound/polyfit.hpp"

namespace boostbound {

enum class DataSource { synthetic, real };

std::string_view to_string(DataSource source);

struct RunParams {
  std::size_t T = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  double delta = kDefaultDelta;
  std::uint64_t seed = 0;
  DataSource source = DataSource::synthetic;

  friend bool operator==(const RunParams&, const RunParams&) = default;
};

/// One grid cell: its parameters and the measured gap.
struct RunRecord {
  std::string experiment_id;
  RunParams params;
  GapReport gap_report;
  std::int64_t wall_time_ms = 0;
};

struct SweepResult {
  std::string experiment_id;
  std::vector<RunRecord> records;
  /// bound confidence over the applicable records; absent for the
  /// iteration sweep, which carries no verdict.
  std::optional<double> confidence;
  std::size_t inapplicable_count = 0;
};

/// Inclusive arithmetic grid: first, first + step, ... while <= last.
struct Grid {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t step = 1;

  std::vector<std::size_t> values() const;
};

/// Settings shared by all sweeps.
struct SweepOptions {
  /// Boosting rounds per cell (ignored by the iteration sweep, which
  /// uses its own T range).
  std::size_t rounds = 50;
  std::size_t epochs = 10;
  /// Independent runs per grid value.
  std::size_t repeats = 1;
  double delta = kDefaultDelta;
  std::uint64_t master_seed = 42;
  /// 0 selects std::thread::hardware_concurrency(). Never affects results.
  std::size_t workers = 0;
  double class_sep = 0.5;
  double flip_y = 0.05;
};

/// Train/test errors against the number of rounds. Each repeat draws a
/// fresh dataset of dimension d - 1 and size 2m and boosts for T_max
/// rounds; the model after T rounds is the T-round prefix of that run.
/// One record per T holds the means over repeats.
SweepResult run_iteration_sweep(std::size_t d, std::size_t m, std::size_t T_max,
                                const SweepOptions& options);

/// For each m on the grid (and each repeat): data of dimension d - 1 and
/// size 2m, split in half, boost, measure the margin on train and check
/// the bound at (rho, d, m, delta).
SweepResult run_sample_size_sweep(std::size_t d, const Grid& m_grid, const SweepOptions& options);

/// As the sample-size sweep, varying d at fixed m. Cells with d > e m are
/// recorded as inapplicable.
SweepResult run_dimension_sweep(std::size_t m, const Grid& d_grid, const SweepOptions& options);

enum class RealMode { m_sweep, d_sweep };

/// Real-data sweeps. The dataset is split in half once. m_sweep: all
/// features, training subsample of size m drawn without replacement from
/// the train half per cell. d_sweep: features ranked by importance on the
/// full train half; each cell keeps the top d - 1 features.
SweepResult run_real_data(const Dataset& dataset, RealMode mode, const Grid& grid,
                          const SweepOptions& options);

struct FeatureRanking {
  /// Column indices, most important first; ties by ascending index.
  std::vector<std::size_t> order;
  /// Per column (indexed by column, not rank); sums to 1.
  std::vector<double> importances;
};

/// importance_j proportional to sum_t alpha_t |w_tj|.
FeatureRanking rank_features(const TrainTrace& trace, std::size_t n_features);

struct ConfidenceRow {
  std::string label;
  double confidence = 0.0;
  std::string formatted;
};

/// "82.5%"-style percentage with one decimal.
std::string format_percent(double fraction);

std::vector<ConfidenceRow> confidence_table(
    std::span<const std::pair<std::string, SweepResult>> sweeps);

/// Recomputes confidence and inapplicable_count from the records.
void summarize(SweepResult& result);

/// Name of the swept parameter ("T", "m" or "d") for an experiment id.
std::string_view swept_parameter(std::string_view experiment_id);

/// Value of the swept parameter in a record.
double swept_value(const RunRecord& record);

/// Median measured margin over applicable records with a defined, nonzero
/// margin.
std::optional<double> median_margin(const SweepResult& result);

/// epsilon_boost at the median margin for each distinct swept value.
/// Points where the bound is infinite or inapplicable are left out.
std::vector<std::pair<double, double>> bound_curve(const SweepResult& result);

/// (swept value, delta_r) for every record.
std::vector<std::pair<double, double>> gap_points(const SweepResult& result);

/// Order-10 fit of the gap points, lowered to (distinct x - 1) when there
/// are too few abscissae; nullopt below two.
std::optional<PolyFit> display_fit(const SweepResult& result);

}  // namespace boostbound
