// Copyright 2026 The Penumbral Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "penumbral/simd/kernels.hpp"

namespace penumbral::simd {

#if !defined(PENUMBRAL_HAVE_AVX2)
namespace avx2 {
void fold_and_or(const std::uint64_t*, std::size_t, std::size_t, std::uint64_t*,
                 std::uint64_t*) {
  throw std::logic_error("AVX2 kernels not compiled in");
}
void sgemm(int, int, int, const float*, const float*, float*, bool) {
  throw std::logic_error("AVX2 kernels not compiled in");
}
}  // namespace avx2
#endif

#if !defined(PENUMBRAL_HAVE_NEON)
namespace neon {
void fold_and_or(const std::uint64_t*, std::size_t, std::size_t, std::uint64_t*,
                 std::uint64_t*) {
  throw std::logic_error("NEON kernels not compiled in");
}
void sgemm(int, int, int, const float*, const float*, float*, bool) {
  throw std::logic_error("NEON kernels not compiled in");
}
}  // namespace neon
#endif

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2:
#if defined(PENUMBRAL_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(PENUMBRAL_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

namespace {

Isa detect() {
  const char* forced = std::getenv("PENUMBRAL_SIMD");
  if (forced && std::strcmp(forced, "scalar") == 0) return Isa::kScalar;
  if (isa_supported(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_supported(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

using FoldFn = void (*)(const std::uint64_t*, std::size_t, std::size_t, std::uint64_t*,
                        std::uint64_t*);
using GemmFn = void (*)(int, int, int, const float*, const float*, float*, bool);

struct Table {
  Isa isa;
  FoldFn fold;
  GemmFn gemm;
};

const Table& table() {
  static const Table t = [] {
    switch (detect()) {
      case Isa::kAvx2: return Table{Isa::kAvx2, &avx2::fold_and_or, &avx2::sgemm};
      case Isa::kNeon: return Table{Isa::kNeon, &neon::fold_and_or, &neon::sgemm};
      case Isa::kScalar: break;
    }
    return Table{Isa::kScalar, &scalar::fold_and_or, &scalar::sgemm};
  }();
  return t;
}

}  // namespace

Isa active_isa() { return table().isa; }

void fold_and_or(const std::uint64_t* rows, std::size_t n_rows, std::size_t n_cols,
                 std::uint64_t* and_out, std::uint64_t* or_out) {
  table().fold(rows, n_rows, n_cols, and_out, or_out);
}

void sgemm(int m, int n, int k, const float* a, const float* b, float* c, bool accumulate) {
  table().gemm(m, n, k, a, b, c, accumulate);
}

}  // namespace penumbral::simd
