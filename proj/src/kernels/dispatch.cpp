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

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "boostbound/kernels.hpp"

namespace boostbound::kernels {

#if defined(BOOSTBOUND_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(BOOSTBOUND_HAVE_NEON)
const KernelTable& neon_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(BOOSTBOUND_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) {
    return &avx2_table();
  }
#endif
  return nullptr;
}

const KernelTable* neon_kernels() {
#if defined(BOOSTBOUND_HAVE_NEON)
  // Advanced SIMD is mandatory on AArch64.
  return &neon_table();
#else
  return nullptr;
#endif
}

std::span<const KernelTable* const> available_kernels() {
  static const std::vector<const KernelTable*> tables = [] {
    std::vector<const KernelTable*> out{&scalar_kernels()};
    for (const KernelTable* table : {avx2_kernels(), neon_kernels()}) {
      if (table != nullptr) {
        out.push_back(table);
      }
    }
    return out;
  }();
  return tables;
}

namespace {

const KernelTable& select_kernels() {
  const auto tables = available_kernels();
  const char* requested = std::getenv("BOOSTBOUND_KERNELS");
  if (requested == nullptr || std::string(requested).empty() || std::string(requested) == "auto") {
    return *tables.back();
  }
  for (const KernelTable* table : tables) {
    if (table->name == requested) {
      return *table;
    }
  }
  throw std::runtime_error(std::string("BOOSTBOUND_KERNELS: kernel variant '") + requested +
                           "' is not available on this machine");
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select_kernels();
  return table;
}

}  // namespace boostbound::kernels
