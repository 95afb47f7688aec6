// Copyright 2026 The ged Authors.
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
#include <string>

#include "ged/error.hpp"
#include "ged/kernels.hpp"

namespace ged::kernels {

#if defined(GED_HAVE_AVX2)
const Table& avx2_table_impl();
#endif

const Table* avx2_table() {
#if defined(GED_HAVE_AVX2)
  return &avx2_table_impl();
#else
  return nullptr;
#endif
}

bool cpu_has_avx2() {
#if defined(GED_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

namespace {

const Table* initial_table() {
  const char* env = std::getenv("GED_SIMD");
  const std::string want = env ? env : "";
  if (want == "scalar") return &scalar_table();
  if (cpu_has_avx2()) return avx2_table();
  return &scalar_table();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{initial_table()};
  return table;
}

}  // namespace

const Table& active() { return *current().load(std::memory_order_acquire); }

void set_isa(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      current().store(&scalar_table(), std::memory_order_release);
      return;
    case Isa::kAvx2:
      if (!cpu_has_avx2()) throw ContractError("AVX2 kernels are not available on this CPU/build");
      current().store(avx2_table(), std::memory_order_release);
      return;
  }
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace ged::kernels
