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
#include <random>
#include <span>

namespace boostbound {

/// Derives an independent 64-bit seed from a master seed and a
/// (stream, index) pair using the SplitMix64 finalizer. Used for every
/// per-round and per-cell seed so results never depend on execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// Seed streams; each consumer of derive_seed uses its own stream id.
namespace seed_stream {
inline constexpr std::uint64_t kData = 1;
inline constexpr std::uint64_t kSplit = 2;
inline constexpr std::uint64_t kBoost = 3;
inline constexpr std::uint64_t kRound = 4;
inline constexpr std::uint64_t kCell = 5;
inline constexpr std::uint64_t kSubsample = 6;
}  // namespace seed_stream

/// Reproducible random source.
///
/// Raw bits come from std::mt19937_64, whose output sequence is fixed by
/// the C++ standard. All derived draws (uniform reals, bounded integers,
/// Gaussians, shuffles) are implemented here rather than through the
/// <random> distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Standard normal draw via the Box-Muller transform. Draws come in
  /// pairs; the second value of each pair is cached for the next call.
  double normal();

  /// Fisher-Yates shuffle, iterating from the back.
  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_index(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace boostbound
