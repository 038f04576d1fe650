// Copyright 2026 The loam Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "loam/kernels.hpp"

namespace loam::kernels {

namespace {

// Explicit override installed via set_active_kernels(); nullptr means "auto".
std::atomic<const KernelTable*> g_override{nullptr};

const KernelTable* find_table(const char* name) {
  for (const KernelTable* table : available_kernels()) {
    if (std::strcmp(table->name, name) == 0) {
      return table;
    }
  }
  return nullptr;
}

}  // namespace

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> tables;
  tables.push_back(&kScalarKernels);
#if LOAM_HAVE_AVX2
  if (__builtin_cpu_supports("avx2")) {
    tables.push_back(&kAvx2Kernels);
  }
#endif
#if LOAM_HAVE_NEON
  tables.push_back(&kNeonKernels);
#endif
  return tables;
}

const KernelTable& active_kernels() {
  const KernelTable* override_table = g_override.load(std::memory_order_acquire);
  if (override_table != nullptr) {
    return *override_table;
  }
  if (const char* requested = std::getenv("LOAM_KERNELS")) {
    if (const KernelTable* table = find_table(requested)) {
      return *table;
    }
    // Unknown names fall through to the automatic choice so a typo degrades
    // to a working run instead of a crash.
  }
  // The most specialised table is appended last.
  return *available_kernels().back();
}

bool set_active_kernels(const char* name) {
  if (name == nullptr) {
    g_override.store(nullptr, std::memory_order_release);
    return true;
  }
  if (const KernelTable* table = find_table(name)) {
    g_override.store(table, std::memory_order_release);
    return true;
  }
  return false;
}

}  // namespace loam::kernels
