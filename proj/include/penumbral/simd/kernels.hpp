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

#pragma once

#include <cstddef>
#include <cstdint>

namespace penumbral::simd {

enum class Isa { kScalar, kAvx2, kNeon };

// Picked once from CPU features. Setting PENUMBRAL_SIMD=scalar in the
// environment forces the reference kernels.
Isa active_isa();
const char* isa_name(Isa isa);
bool isa_supported(Isa isa);

// rows is n_rows x n_cols, row-major. and_out[c] / or_out[c] receive the
// bitwise AND / OR of column c over all rows. n_rows must be >= 1.
void fold_and_or(const std::uint64_t* rows, std::size_t n_rows, std::size_t n_cols,
                 std::uint64_t* and_out, std::uint64_t* or_out);

// C (m x n) = A (m x k) * B (k x n), all row-major. With accumulate set the
// product is added to C.
void sgemm(int m, int n, int k, const float* a, const float* b, float* c, bool accumulate);

// Direct entry points, used by the equivalence tests.
namespace scalar {
void fold_and_or(const std::uint64_t* rows, std::size_t n_rows, std::size_t n_cols,
                 std::uint64_t* and_out, std::uint64_t* or_out);
void sgemm(int m, int n, int k, const float* a, const float* b, float* c, bool accumulate);
}  // namespace scalar

namespace avx2 {
void fold_and_or(const std::uint64_t* rows, std::size_t n_rows, std::size_t n_cols,
                 std::uint64_t* and_out, std::uint64_t* or_out);
void sgemm(int m, int n, int k, const float* a, const float* b, float* c, bool accumulate);
}  // namespace avx2

namespace neon {
void fold_and_or(const std::uint64_t* rows, std::size_t n_rows, std::size_t n_cols,
                 std::uint64_t* and_out, std::uint64_t* or_out);
void sgemm(int m, int n, int k, const float* a, const float* b, float* c, bool accumulate);
}  // namespace neon

}  // namespace penumbral::simd
