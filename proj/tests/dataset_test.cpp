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
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>

#include <gtest/gtest.h>

#include "boostbound/rng.hpp"

namespace boostbound {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("boostbound_data_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path write(const std::string& name, const std::string& contents) const {
    std::ofstream(path_ / name) << contents;
    return path_ / name;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

Dataset small(std::size_t rows) {
  std::vector<double> f;
  std::vector<int> y;
  for (std::size_t i = 0; i < rows; ++i) {
    f.push_back(static_cast<double>(i));
    f.push_back(-static_cast<double>(i) * 0.5);
    y.push_back(i % 3 == 0 ? 1 : -1);
  }
  return Dataset(2, f, y);
}

TEST(Dataset, RejectsBadLabelsAndNonFiniteFeatures) {
  EXPECT_THROW(Dataset(1, {0.0}, {0}), DataError);
  EXPECT_THROW(Dataset(1, {NAN}, {1}), DataError);
  EXPECT_THROW(Dataset(1, {INFINITY}, {1}), DataError);
  EXPECT_THROW(Dataset(2, {1.0, 2.0, 3.0}, {1}), DataError);
  EXPECT_THROW(Dataset(1, {1.0}, {1}, {"a", "b"}), DataError);
}

TEST(GenerateSynthetic, BalancedWithoutFlips) {
  const auto data = generate_synthetic({.n_features = 2, .m_total = 4, .flip_y = 0.0, .seed = 1});
  EXPECT_EQ(data.rows(), 4u);
  EXPECT_EQ(data.cols(), 2u);
  EXPECT_EQ(std::count(data.labels().begin(), data.labels().end(), 1), 2);
  EXPECT_EQ(std::count(data.labels().begin(), data.labels().end(), -1), 2);
}

TEST(GenerateSynthetic, OddSizePutsExtraRowInPositiveCluster) {
  const auto data = generate_synthetic({.n_features = 3, .m_total = 7, .flip_y = 0.0, .seed = 2});
  EXPECT_EQ(std::count(data.labels().begin(), data.labels().end(), 1), 4);
}

TEST(GenerateSynthetic, ZeroSeparationMeansCoincide) {
  // With class_sep = 0 both clusters are centred at the origin: every
  // feature is a raw standard-normal draw, whatever the cluster.
  const auto data = generate_synthetic(
      {.n_features = 3, .m_total = 10, .class_sep = 0.0, .flip_y = 0.0, .seed = 4});
  Rng rng(4);
  for (const double v : data.features()) {
    EXPECT_EQ(v, rng.normal());
  }
}

TEST(GenerateSynthetic, ClusterMeansAreTwoClassSepApart) {
  const std::size_t n = 4, m = 200000;
  const auto data = generate_synthetic({.n_features = n, .m_total = m, .class_sep = 0.5, .flip_y = 0.0, .seed = 5});
  std::vector<double> pos(n, 0.0), neg(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    auto& target = data.label(i) == 1 ? pos : neg;
    for (std::size_t j = 0; j < n; ++j) target[j] += data.row(i)[j];
  }
  double dist2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double diff = pos[j] / (m / 2) - neg[j] / (m / 2);
    EXPECT_NEAR(pos[j] / (m / 2), 0.5 / std::sqrt(4.0), 0.01);
    dist2 += diff * diff;
  }
  EXPECT_NEAR(std::sqrt(dist2), 1.0, 0.02);
}

// Exact binomial quantile by summing the pmf in log space.
std::size_t binomial_quantile(std::size_t n, double p, double q) {
  double cdf = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double log_pmf = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                           k * std::log(p) + (n - k) * std::log1p(-p);
    cdf += std::exp(log_pmf);
    if (cdf >= q) return k;
  }
  return n;
}

TEST(GenerateSynthetic, FlipFractionWithinBinomialInterval) {
  const std::size_t m = 100000;
  const auto data = generate_synthetic({.n_features = 2, .m_total = m, .flip_y = 0.05, .seed = 6});
  std::size_t flipped = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const int cluster = i < (m + 1) / 2 ? 1 : -1;
    flipped += data.label(i) != cluster ? 1 : 0;
  }
  const auto lo = binomial_quantile(m, 0.05, 0.0005);
  const auto hi = binomial_quantile(m, 0.05, 0.9995);
  EXPECT_GE(flipped, lo);
  EXPECT_LE(flipped, hi);
}

TEST(GenerateSynthetic, FlippingNeverChangesFeatures) {
  const auto clean = generate_synthetic({.n_features = 5, .m_total = 50, .flip_y = 0.0, .seed = 8});
  const auto noisy = generate_synthetic({.n_features = 5, .m_total = 50, .flip_y = 0.3, .seed = 8});
  EXPECT_TRUE(std::equal(clean.features().begin(), clean.features().end(), noisy.features().begin()));
  for (std::size_t i = 0; i < 50; ++i) {
    EXPECT_EQ(clean.label(i), i < 25 ? 1 : -1);
  }
}

TEST(GenerateSynthetic, DeterministicAndRejectsBadConfigs) {
  const SyntheticConfig config{.n_features = 3, .m_total = 20, .seed = 77};
  EXPECT_EQ(generate_synthetic(config), generate_synthetic(config));
  EXPECT_THROW(generate_synthetic({.n_features = 3, .m_total = 1}), DataError);
  EXPECT_THROW(generate_synthetic({.n_features = 3, .m_total = 4, .class_sep = -0.1}), DataError);
  EXPECT_THROW(generate_synthetic({.n_features = 3, .m_total = 4, .flip_y = 1.5}), DataError);
  EXPECT_THROW(generate_synthetic({.n_features = 3, .m_total = 4, .flip_y = -0.01}), DataError);
}

std::vector<std::vector<double>> row_multiset(const Dataset& d) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    std::vector<double> r(d.row(i).begin(), d.row(i).end());
    r.push_back(d.label(i));
    rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

TEST(SplitHalf, EvenAndOddSizes) {
  const auto even = split_half(small(10), 1);
  EXPECT_EQ(even.train.rows(), 5u);
  EXPECT_EQ(even.test.rows(), 5u);
  const auto odd = split_half(small(11), 1);
  EXPECT_EQ(odd.train.rows(), 6u);
  EXPECT_EQ(odd.test.rows(), 5u);
  EXPECT_THROW(split_half(small(1), 1), DataError);
}

TEST(SplitHalf, UnionIsTheSourceForManySeeds) {
  const auto source = small(13);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto split = split_half(source, seed);
    auto rows = row_multiset(split.train);
    const auto test_rows = row_multiset(split.test);
    rows.insert(rows.end(), test_rows.begin(), test_rows.end());
    std::sort(rows.begin(), rows.end());
    ASSERT_EQ(rows, row_multiset(source)) << seed;
  }
}

TEST(SplitHalf, Deterministic) {
  const auto source = small(20);
  const auto a = split_half(source, 3);
  const auto b = split_half(source, 3);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  EXPECT_NE(split_half(source, 4).train, a.train);
}

TEST(LoadCsv, MapsTargetAndFeatures) {
  TempDir dir;
  const auto path = dir.write("a.csv", "t,a,b\n1,0.5,2\n0,1.5,3\n");
  const auto data = load_csv(path, "t", "1");
  ASSERT_EQ(data.rows(), 2u);
  EXPECT_EQ(data.label(0), 1);
  EXPECT_EQ(data.label(1), -1);
  EXPECT_EQ(std::vector<double>(data.features().begin(), data.features().end()),
            (std::vector<double>{0.5, 2, 1.5, 3}));
  EXPECT_EQ(data.feature_names(), (std::vector<std::string>{"a", "b"}));
}

TEST(LoadCsv, TargetMayBeAnyColumnAndCrlfIsAccepted) {
  TempDir dir;
  const auto path = dir.write("b.csv", "a,label,b\r\n1,yes,2\r\n3,no,4\r\n");
  const auto data = load_csv(path, "label", "yes");
  EXPECT_EQ(data.label(0), 1);
  EXPECT_EQ(data.label(1), -1);
  EXPECT_EQ(data.row(1)[1], 4.0);
}

TEST(LoadCsv, NumericLabelsCompareByValue) {
  TempDir dir;
  const auto path = dir.write("c.csv", "t,a\n1.0,1\n0.0,2\n1,3\n");
  const auto data = load_csv(path, "t", "1");
  EXPECT_EQ(data.label(0), 1);
  EXPECT_EQ(data.label(1), -1);
  EXPECT_EQ(data.label(2), 1);
}

TEST(LoadCsv, ErrorPaths) {
  TempDir dir;
  EXPECT_THROW(load_csv(dir.path() / "missing.csv", "t", "1"), DataError);

  const auto no_target = dir.write("c.csv", "a,b\n1,2\n");
  try {
    load_csv(no_target, "t", "1");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("'t'"), std::string::npos);
  }

  const auto text_cell = dir.write("d.csv", "t,a,b\n1,0.5,2\n0,abc,3\n");
  try {
    load_csv(text_cell, "t", "1");
    FAIL();
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("row 1"), std::string::npos) << msg;
    EXPECT_NE(msg.find("'a'"), std::string::npos) << msg;
  }

  EXPECT_THROW(load_csv(dir.write("e.csv", "t,a\n"), "t", "1"), DataError);
  EXPECT_THROW(load_csv(dir.write("f.csv", "t,a\n1,2,3\n"), "t", "1"), DataError);
}

TEST(SelectFeatures, IdentitySubsetAndPermutation) {
  const auto data = Dataset(3, {1, 2, 3, 4, 5, 6}, {1, -1}, {"a", "b", "c"});
  const std::vector<std::size_t> all{0, 1, 2};
  EXPECT_EQ(select_features(data, all), data);

  const std::vector<std::size_t> one{1};
  const auto single = select_features(data, one);
  EXPECT_EQ(single.cols(), 1u);
  EXPECT_EQ(single.row(1)[0], 5.0);
  EXPECT_EQ(std::vector<int>(single.labels().begin(), single.labels().end()),
            (std::vector<int>{1, -1}));

  const std::vector<std::size_t> swapped{2, 0};
  const auto perm = select_features(data, swapped);
  EXPECT_EQ(perm.row(0)[0], 3.0);
  EXPECT_EQ(perm.row(0)[1], 1.0);
  EXPECT_EQ(perm.feature_names(), (std::vector<std::string>{"c", "a"}));

  const std::vector<std::size_t> out_of_range{3};
  const std::vector<std::size_t> duplicate{0, 0};
  EXPECT_THROW(select_features(data, out_of_range), DataError);
  EXPECT_THROW(select_features(data, duplicate), DataError);
}

TEST(LoadCsv, RoundTripsThroughSelectAll) {
  TempDir dir;
  const auto path = dir.write("g.csv", "y,p,q,r\n1,0.1,1e-300,-7.25\n0,3.14159265358979312,2,0\n");
  const auto data = load_csv(path, "y", "1");
  std::vector<std::size_t> all(data.cols());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const auto same = select_features(data, all);
  EXPECT_EQ(same, data);
  EXPECT_EQ(same.row(0)[1], 1e-300);
  EXPECT_EQ(same.row(1)[0], 3.14159265358979312);
}

TEST(SubsampleRows, DistinctRowsAndDeterministic) {
  const auto source = small(30);
  const auto a = subsample_rows(source, 10, 4);
  EXPECT_EQ(a.rows(), 10u);
  EXPECT_EQ(a, subsample_rows(source, 10, 4));
  EXPECT_EQ(subsample_rows(source, 100, 4).rows(), 30u);
  std::vector<double> firsts;
  for (std::size_t i = 0; i < a.rows(); ++i) firsts.push_back(a.row(i)[0]);
  std::sort(firsts.begin(), firsts.end());
  EXPECT_EQ(std::adjacent_find(firsts.begin(), firsts.end()), firsts.end());
}

}  // namespace
}  // namespace boostbound
