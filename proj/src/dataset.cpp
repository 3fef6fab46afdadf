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

#include "boostbound/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string_view>

#include <fmt/format.h>

#include "boostbound/rng.hpp"

namespace boostbound {

Dataset::Dataset(std::size_t n_features, std::vector<double> features, std::vector<int> labels,
                 std::vector<std::string> feature_names)
    : n_features_(n_features),
      features_(std::move(features)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)) {
  if (features_.size() != labels_.size() * n_features_) {
    throw DataError(fmt::format("dataset: {} feature values do not fill {} rows x {} columns",
                                features_.size(), labels_.size(), n_features_));
  }
  if (!feature_names_.empty() && feature_names_.size() != n_features_) {
    throw DataError(fmt::format("dataset: {} feature names for {} columns", feature_names_.size(),
                                n_features_));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != 1 && labels_[i] != -1) {
      throw DataError(fmt::format("dataset: label {} at row {} is not -1 or +1", labels_[i], i));
    }
  }
  for (std::size_t k = 0; k < features_.size(); ++k) {
    if (!std::isfinite(features_[k])) {
      throw DataError(fmt::format("dataset: non-finite feature at row {}, column {}",
                                  k / n_features_, k % n_features_));
    }
  }
}

Dataset Dataset::take_rows(std::span<const std::size_t> indices) const {
  std::vector<double> features;
  features.reserve(indices.size() * n_features_);
  std::vector<int> labels;
  labels.reserve(indices.size());
  for (const std::size_t i : indices) {
    if (i >= rows()) {
      throw DataError(fmt::format("dataset: row index {} out of range ({} rows)", i, rows()));
    }
    const auto r = row(i);
    features.insert(features.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
  }
  return Dataset(n_features_, std::move(features), std::move(labels), feature_names_);
}

Dataset generate_synthetic(const SyntheticConfig& config) {
  if (config.n_features == 0) {
    throw DataError("generate_synthetic: n_features must be positive");
  }
  if (config.m_total < 2) {
    throw DataError(fmt::format("generate_synthetic: m_total must be >= 2, got {}", config.m_total));
  }
  if (!(config.class_sep >= 0.0) || !std::isfinite(config.class_sep)) {
    throw DataError("generate_synthetic: class_sep must be a nonnegative finite number");
  }
  if (!(config.flip_y >= 0.0 && config.flip_y <= 1.0)) {
    throw DataError("generate_synthetic: flip_y must lie in [0, 1]");
  }

  const std::size_t m = config.m_total;
  const std::size_t n = config.n_features;
  const std::size_t positives = (m + 1) / 2;
  const double offset = config.class_sep / std::sqrt(static_cast<double>(n));

  Rng rng(config.seed);
  std::vector<double> features(m * n);
  std::vector<int> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int cluster = i < positives ? 1 : -1;
    labels[i] = cluster;
    const double center = cluster * offset;
    for (std::size_t j = 0; j < n; ++j) {
      features[i * n + j] = center + rng.normal();
    }
  }
  // One uniform per row, drawn after all features, so flip_y never
  // perturbs the feature stream.
  for (std::size_t i = 0; i < m; ++i) {
    if (rng.uniform() < config.flip_y) {
      labels[i] = -labels[i];
    }
  }
  return Dataset(n, std::move(features), std::move(labels));
}

SplitPair split_half(const Dataset& dataset, std::uint64_t seed) {
  if (dataset.rows() < 2) {
    throw DataError(fmt::format("split_half: need at least 2 rows, got {}", dataset.rows()));
  }
  std::vector<std::size_t> order(dataset.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  const std::size_t n_train = (order.size() + 1) / 2;
  const std::span<const std::size_t> all(order);
  return {dataset.take_rows(all.first(n_train)), dataset.take_rows(all.subspan(n_train))};
}

Dataset subsample_rows(const Dataset& dataset, std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(dataset.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  order.resize(std::min(n, order.size()));
  return dataset.take_rows(order);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Numeric labels compare by value so "1.0" matches "1".
bool label_matches(std::string_view cell, std::string_view positive) {
  const auto number = [](std::string_view text) -> std::optional<double> {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
    return value;
  };
  if (cell == positive) return true;
  const auto a = number(cell);
  const auto b = number(positive);
  return a && b && *a == *b;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const std::string& target_column,
                 const std::string& positive_value) {
  std::ifstream in(path);
  if (!in) {
    throw DataError(fmt::format("load_csv: cannot open '{}'", path.string()));
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(fmt::format("load_csv: '{}' has no header row", path.string()));
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  const auto header = split_fields(line);
  std::optional<std::size_t> target;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto name = trim(header[c]);
    if (name == target_column && !target) {
      target = c;
    } else {
      names.emplace_back(name);
    }
  }
  if (!target) {
    throw DataError(fmt::format("load_csv: target column '{}' not found in header of '{}'",
                                target_column, path.string()));
  }

  std::vector<double> features;
  std::vector<int> labels;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split_fields(line);
    const std::size_t data_row = labels.size();
    if (fields.size() != header.size()) {
      throw DataError(fmt::format("load_csv: row {} (line {}) has {} fields, header has {}",
                                  data_row, line_number, fields.size(), header.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto cell = trim(fields[c]);
      if (c == *target) {
        labels.push_back(label_matches(cell, positive_value) ? 1 : -1);
        continue;
      }
      double value = 0.0;
      const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc() || end != cell.data() + cell.size() || cell.empty() ||
          !std::isfinite(value)) {
        throw DataError(fmt::format("load_csv: row {} (line {}), column '{}': '{}' is not a number",
                                    data_row, line_number, trim(header[c]), cell));
      }
      features.push_back(value);
    }
  }
  if (labels.empty()) {
    throw DataError(fmt::format("load_csv: '{}' has no data rows", path.string()));
  }
  const std::size_t n = names.size();
  return Dataset(n, std::move(features), std::move(labels), std::move(names));
}

Dataset select_features(const Dataset& dataset, std::span<const std::size_t> column_indices) {
  std::vector<bool> seen(dataset.cols(), false);
  for (const std::size_t c : column_indices) {
    if (c >= dataset.cols()) {
      throw DataError(fmt::format("select_features: column {} out of range ({} columns)", c,
                                  dataset.cols()));
    }
    if (seen[c]) {
      throw DataError(fmt::format("select_features: column {} selected twice", c));
    }
    seen[c] = true;
  }
  const std::size_t n = column_indices.size();
  std::vector<double> features;
  features.reserve(dataset.rows() * n);
  for (std::size_t i = 0; i < dataset.rows(); ++i) {
    const auto r = dataset.row(i);
    for (const std::size_t c : column_indices) {
      features.push_back(r[c]);
    }
  }
  std::vector<std::string> names;
  if (!dataset.feature_names().empty()) {
    for (const std::size_t c : column_indices) {
      names.push_back(dataset.feature_names()[c]);
    }
  }
  return Dataset(n, std::move(features), std::vector<int>(dataset.labels().begin(), dataset.labels().end()),
                 std::move(names));
}

}  // namespace boostbound
