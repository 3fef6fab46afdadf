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

#include <immintrin.h>

#include "boostbound/kernels.hpp"

namespace boostbound::kernels {

namespace {

// Lanes (l0, l1 | l2, l3) -> (l0 + l2) + (l1 + l3).
inline double combine_lanes(__m256d acc) {
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double total = combine_lanes(acc);
  for (std::size_t i = blocked; i < n; ++i) {
    total = total + a[i] * b[i];
  }
  return total;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d scale = _mm256_set1_pd(alpha);
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    const __m256d product = _mm256_mul_pd(scale, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), product));
  }
  for (std::size_t i = blocked; i < n; ++i) {
    y[i] = y[i] + alpha * x[i];
  }
}

double sum_avx2(const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
  }
  double total = combine_lanes(acc);
  for (std::size_t i = blocked; i < n; ++i) {
    total = total + v[i];
  }
  return total;
}

double masked_sum_avx2(const double* weights, const double* agreement, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const __m256d zero = _mm256_setzero_pd();
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(agreement + i), zero, _CMP_LT_OQ);
    acc = _mm256_add_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(weights + i)));
  }
  double total = combine_lanes(acc);
  for (std::size_t i = blocked; i < n; ++i) {
    total = total + (agreement[i] < 0.0 ? weights[i] : 0.0);
  }
  return total;
}

void reweight_avx2(double* v, const double* agreement, double factor_agree,
                   double factor_disagree, std::size_t n) {
  const __m256d agree = _mm256_set1_pd(factor_agree);
  const __m256d disagree = _mm256_set1_pd(factor_disagree);
  const __m256d zero = _mm256_setzero_pd();
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(agreement + i), zero, _CMP_GT_OQ);
    const __m256d factor = _mm256_blendv_pd(disagree, agree, mask);
    _mm256_storeu_pd(v + i, _mm256_mul_pd(_mm256_loadu_pd(v + i), factor));
  }
  for (std::size_t i = blocked; i < n; ++i) {
    v[i] = v[i] * (agreement[i] > 0.0 ? factor_agree : factor_disagree);
  }
}

void divide_avx2(double* v, double divisor, std::size_t n) {
  const __m256d d = _mm256_set1_pd(divisor);
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    _mm256_storeu_pd(v + i, _mm256_div_pd(_mm256_loadu_pd(v + i), d));
  }
  for (std::size_t i = blocked; i < n; ++i) {
    v[i] = v[i] / divisor;
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2",          dot_avx2,      axpy_avx2, sum_avx2,
                                 masked_sum_avx2, reweight_avx2, divide_avx2};
  return table;
}

}  // namespace boostbound::kernels
