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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "boostbound/experiments.hpp"
#include "boostbound/polyfit.hpp"

namespace boostbound {

/// Thrown when an output file cannot be written or an input table is
/// malformed.
class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kSweepCsvHeader =
    "experiment_id,source,T,m,d,delta,seed,rho,train_error,test_error,delta_r,epsilon_boost,holds,"
    "applicable";

/// 17 significant digits; "+inf", "-inf" and "nan" for non-finite values.
std::string format_real(double value);
double parse_real(std::string_view text);

std::string sweep_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

/// Reads a file written by emit_csv. Confidence and inapplicable_count
/// are recomputed from the rows; wall times are not stored and read as 0.
SweepResult read_sweep_csv(const std::filesystem::path& path);

std::string confidence_csv(std::span<const ConfidenceRow> rows);

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

/// A 2-D chart: scatter layers drawn as circles, solid and dashed layers
/// as polylines.
struct Figure {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> scatter;
  std::vector<Series> solid;
  std::vector<Series> dashed;
};

/// Standalone SVG 1.1 document with an 800x600 viewBox.
std::string render_svg(const Figure& figure);

/// Gap scatter, its polynomial fit (solid) and the bound curve (dashed).
Figure sweep_figure(const SweepResult& result, const std::optional<PolyFit>& fit,
                    std::span<const std::pair<double, double>> bound);

/// Mean train and test error against T.
Figure iteration_figure(const SweepResult& result);

void emit_svg(const SweepResult& result, const std::optional<PolyFit>& fit,
              std::span<const std::pair<double, double>> bound, const std::filesystem::path& path);

/// Figure appropriate for the experiment: iteration_figure for "t-sweep",
/// sweep_figure with display_fit and bound_curve otherwise.
std::string default_svg(const SweepResult& result);

void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace boostbound
