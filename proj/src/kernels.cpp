// Copyright 2026 The fairdiv Authors.
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
#include <stdexcept>
#include <vector>

#include "fairdiv/kernels.hpp"

namespace fairdiv::kernels {
namespace {

std::vector<KernelTable> detect() {
  std::vector<KernelTable> tables;
  tables.push_back({Isa::kScalar, &scalar::distances, &scalar::relax, &scalar::elementwise_min, &scalar::relax_argmax});
#if defined(FAIRDIV_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) {
    tables.push_back({Isa::kAvx2, &avx2::distances, &avx2::relax, &avx2::elementwise_min, &avx2::relax_argmax});
  }
#endif
#if defined(FAIRDIV_HAVE_NEON)
  tables.push_back({Isa::kNeon, &neon::distances, &neon::relax, &neon::elementwise_min, &neon::relax_argmax});
#endif
  return tables;
}

const std::vector<KernelTable>& tables() {
  static const std::vector<KernelTable> t = detect();
  return t;
}

// -1: no override.
std::atomic<int> g_override{-1};

bool env_forces_scalar() {
  static const bool forced = [] {
    const char* v = std::getenv("FAIRDIV_FORCE_SCALAR");
    return v != nullptr && *v != '\0' && *v != '0';
  }();
  return forced;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

std::span<const KernelTable> available() { return tables(); }

const KernelTable& table_for(Isa isa) {
  for (const auto& t : tables()) {
    if (t.isa == isa) return t;
  }
  throw std::invalid_argument("kernel variant not available: " + std::string(isa_name(isa)));
}

const KernelTable& active() {
  const int o = g_override.load(std::memory_order_relaxed);
  if (o >= 0) return table_for(static_cast<Isa>(o));
  if (env_forces_scalar()) return tables().front();
  return tables().back();
}

void set_override(std::optional<Isa> isa) {
  if (isa) (void)table_for(*isa);
  g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

}  // namespace fairdiv::kernels
