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
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace boostbound {

/// Thrown for malformed inputs: bad configs, bad CSV content, bad indices.
class DataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Binary-labelled feature matrix, stored row-major.
///
/// Invariants, checked on construction: every label is -1 or +1, every
/// feature is finite, and the label count and feature-name count agree
/// with the matrix shape.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t n_features, std::vector<double> features, std::vector<int> labels,
          std::vector<std::string> feature_names = {});

  std::size_t rows() const { return labels_.size(); }
  std::size_t cols() const { return n_features_; }
  bool empty() const { return labels_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * n_features_, n_features_};
  }
  int label(std::size_t i) const { return labels_[i]; }

  std::span<const double> features() const { return features_; }
  std::span<const int> labels() const { return labels_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }

  /// New dataset made of the given rows, in the given order.
  Dataset take_rows(std::span<const std::size_t> indices) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::size_t n_features_ = 0;
  std::vector<double> features_;
  std::vector<int> labels_;
  std::vector<std::string> feature_names_;
};

struct SyntheticConfig {
  std::size_t n_features = 1;
  std::size_t m_total = 2;
  double class_sep = 0.5;
  double flip_y = 0.05;
  std::uint64_t seed = 0;
};

struct SplitPair {
  Dataset train;
  Dataset test;
};

/// Two isotropic unit-variance Gaussian clusters. The first ceil(m/2)
/// rows belong to cluster +1 (mean +class_sep/sqrt(n) in every
/// coordinate), the rest to cluster -1. Each label is then negated
/// independently with probability flip_y.
Dataset generate_synthetic(const SyntheticConfig& config);

/// Seeded shuffle, then the first ceil(m/2) rows go to train and the rest
/// to test.
SplitPair split_half(const Dataset& dataset, std::uint64_t seed);

/// Reads a headered, comma-separated file. Cells in `target_column` equal
/// to `positive_value` become +1 and everything else -1; all other columns
/// become features in header order.
Dataset load_csv(const std::filesystem::path& path, const std::string& target_column,
                 const std::string& positive_value);

/// Seeded sample of `n` distinct rows (all rows, shuffled, when n >= rows).
Dataset subsample_rows(const Dataset& dataset, std::size_t n, std::uint64_t seed);

/// Keeps only the given columns, in the given order.
Dataset select_features(const Dataset& dataset, std::span<const std::size_t> column_indices);

}  // namespace boostbound
