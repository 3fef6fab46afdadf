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

// Data-parallel inner loops shared by the perceptron and the boosting
// update. Every kernel has a scalar reference implementation that fixes
// the floating-point evaluation order; the SIMD variants reproduce that
// order lane for lane, so all variants return bit-identical results.
//
// Reduction order used by `dot`, `sum` and `masked_sum`: elements are
// split into blocks of four. Lane k accumulates element 4j+k of every
// full block, then the lanes are combined as (l0 + l2) + (l1 + l3), and
// finally the tail (n mod 4 elements) is added left to right.

#include <cstddef>
#include <span>
#include <string_view>

namespace boostbound::kernels {

struct KernelTable {
  std::string_view name;

  /// Inner product of two equal-length vectors.
  double (*dot)(const double* a, const double* b, std::size_t n);

  /// y += alpha * x.
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  double (*sum)(const double* v, std::size_t n);

  /// Sum of weights[i] over entries with agreement[i] < 0.
  double (*masked_sum)(const double* weights, const double* agreement, std::size_t n);

  /// v[i] *= (agreement[i] > 0 ? factor_agree : factor_disagree).
  void (*reweight)(double* v, const double* agreement, double factor_agree,
                   double factor_disagree, std::size_t n);

  /// v[i] /= divisor.
  void (*divide)(double* v, double divisor, std::size_t n);
};

const KernelTable& scalar_kernels();

/// Returns nullptr when the variant was not compiled in or the running
/// CPU lacks the instruction set.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

/// Every variant usable on this machine, scalar first.
std::span<const KernelTable* const> available_kernels();

/// The table selected for this process. Chosen once: the widest
/// supported variant, unless BOOSTBOUND_KERNELS names a specific one
/// ("scalar", "avx2", "neon").
const KernelTable& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline double sum(std::span<const double> v) { return active().sum(v.data(), v.size()); }

inline double masked_sum(std::span<const double> weights, std::span<const double> agreement) {
  return active().masked_sum(weights.data(), agreement.data(), weights.size());
}

inline void reweight(std::span<double> v, std::span<const double> agreement, double factor_agree,
                     double factor_disagree) {
  active().reweight(v.data(), agreement.data(), factor_agree, factor_disagree, v.size());
}

inline void divide(std::span<double> v, double divisor) {
  active().divide(v.data(), divisor, v.size());
}

}  // namespace boostbound::kernels
