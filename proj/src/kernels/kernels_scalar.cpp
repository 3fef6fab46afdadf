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

#include "boostbound/kernels.hpp"

namespace boostbound::kernels {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    lane[0] = lane[0] + a[i] * b[i];
    lane[1] = lane[1] + a[i + 1] * b[i + 1];
    lane[2] = lane[2] + a[i + 2] * b[i + 2];
    lane[3] = lane[3] + a[i + 3] * b[i + 3];
  }
  double total = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (std::size_t i = blocked; i < n; ++i) {
    total = total + a[i] * b[i];
  }
  return total;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = y[i] + alpha * x[i];
  }
}

double sum_scalar(const double* v, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    for (std::size_t k = 0; k < 4; ++k) {
      lane[k] = lane[k] + v[i + k];
    }
  }
  double total = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (std::size_t i = blocked; i < n; ++i) {
    total = total + v[i];
  }
  return total;
}

double masked_sum_scalar(const double* weights, const double* agreement, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t blocked = n - n % 4;
  for (std::size_t i = 0; i < blocked; i += 4) {
    for (std::size_t k = 0; k < 4; ++k) {
      // Adding +0.0 for masked-out lanes mirrors the SIMD blend exactly.
      lane[k] = lane[k] + (agreement[i + k] < 0.0 ? weights[i + k] : 0.0);
    }
  }
  double total = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (std::size_t i = blocked; i < n; ++i) {
    total = total + (agreement[i] < 0.0 ? weights[i] : 0.0);
  }
  return total;
}

void reweight_scalar(double* v, const double* agreement, double factor_agree,
                     double factor_disagree, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = v[i] * (agreement[i] > 0.0 ? factor_agree : factor_disagree);
  }
}

void divide_scalar(double* v, double divisor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = v[i] / divisor;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",          dot_scalar,      axpy_scalar, sum_scalar,
                                 masked_sum_scalar, reweight_scalar, divide_scalar};
  return table;
}

}  // namespace boostbound::kernels
