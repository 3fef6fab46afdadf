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

#include <arm_neon.h>

#include "boostbound/kernels.hpp"

namespace boostbound::kernels {

namespace {

// Two 2-lane registers emulate the 4-lane reduction order:
// low = (l0, l1), high = (l2, l3) -> (l0 + l2) + (l1 + l3).
inline double combine_lanes(float64x2_t low, float64x2_t high) {
  const float64x2_t pair = vaddq_f64(low, high);
  return vgetq_lane_f64(pair, 0) + vgetq_lane_f64(pair, 1);
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t low = vdupq_n_f64(0.0);
  float64x2_t high = vdupq_n_f64(0.0);
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    low = vaddq_f64(low, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    high = vaddq_f64(high, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double total = combine_lanes(low, high);
  for (std::size_t i = blocked; i < n; ++i) {
    total = total + a[i] * b[i];
  }
  return total;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t scale = vdupq_n_f64(alpha);
  const std::size_t blocked = n - n % 2;
  for (std::size_t i = 0; i < blocked; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(scale, vld1q_f64(x + i))));
  }
  for (std::size_t i = blocked; i < n; ++i) {
    y[i] = y[i] + alpha * x[i];
  }
}

double sum_neon(const double* v, std::size_t n) {
  float64x2_t low = vdupq_n_f64(0.0);
  float64x2_t high = vdupq_n_f64(0.0);
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    low = vaddq_f64(low, vld1q_f64(v + i));
    high = vaddq_f64(high, vld1q_f64(v + i + 2));
  }
  double total = combine_lanes(low, high);
  for (std::size_t i = blocked; i < n; ++i) {
    total = total + v[i];
  }
  return total;
}

inline float64x2_t masked(const double* weights, const double* agreement) {
  const uint64x2_t mask = vcltzq_f64(vld1q_f64(agreement));
  return vreinterpretq_f64_u64(vandq_u64(mask, vreinterpretq_u64_f64(vld1q_f64(weights))));
}

double masked_sum_neon(const double* weights, const double* agreement, std::size_t n) {
  float64x2_t low = vdupq_n_f64(0.0);
  float64x2_t high = vdupq_n_f64(0.0);
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    low = vaddq_f64(low, masked(weights + i, agreement + i));
    high = vaddq_f64(high, masked(weights + i + 2, agreement + i + 2));
  }
  double total = combine_lanes(low, high);
  for (std::size_t i = blocked; i < n; ++i) {
    total = total + (agreement[i] < 0.0 ? weights[i] : 0.0);
  }
  return total;
}

void reweight_neon(double* v, const double* agreement, double factor_agree,
                   double factor_disagree, std::size_t n) {
  const float64x2_t agree = vdupq_n_f64(factor_agree);
  const float64x2_t disagree = vdupq_n_f64(factor_disagree);
  const std::size_t blocked = n - n % 2;
  for (std::size_t i = 0; i < blocked; i += 2) {
    const uint64x2_t mask = vcgtzq_f64(vld1q_f64(agreement + i));
    const float64x2_t factor = vbslq_f64(mask, agree, disagree);
    vst1q_f64(v + i, vmulq_f64(vld1q_f64(v + i), factor));
  }
  for (std::size_t i = blocked; i < n; ++i) {
    v[i] = v[i] * (agreement[i] > 0.0 ? factor_agree : factor_disagree);
  }
}

void divide_neon(double* v, double divisor, std::size_t n) {
  const float64x2_t d = vdupq_n_f64(divisor);
  const std::size_t blocked = n - n % 2;
  for (std::size_t i = 0; i < blocked; i += 2) {
    vst1q_f64(v + i, vdivq_f64(vld1q_f64(v + i), d));
  }
  for (std::size_t i = blocked; i < n; ++i) {
    v[i] = v[i] / divisor;
  }
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{"neon",          dot_neon,      axpy_neon, sum_neon,
                                 masked_sum_neon, reweight_neon, divide_neon};
  return table;
}

}  // namespace boostbound::kernels
