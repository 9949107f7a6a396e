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

#include <immintrin.h>

#include "penumbral/simd/kernels.hpp"

namespace penumbral::simd::avx2 {

void fold_and_or(const std::uint64_t* rows, std::size_t n_rows, std::size_t n_cols,
                 std::uint64_t* and_out, std::uint64_t* or_out) {
  std::size_t c = 0;
  for (; c + 4 <= n_cols; c += 4) {
    __m256i acc_and = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows + c));
    __m256i acc_or = acc_and;
    for (std::size_t r = 1; r < n_rows; ++r) {
      const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows + r * n_cols + c));
      acc_and = _mm256_and_si256(acc_and, v);
      acc_or = _mm256_or_si256(acc_or, v);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(and_out + c), acc_and);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(or_out + c), acc_or);
  }
  for (; c < n_cols; ++c) {
    std::uint64_t a = rows[c];
    std::uint64_t o = rows[c];
    for (std::size_t r = 1; r < n_rows; ++r) {
      a &= rows[r * n_cols + c];
      o |= rows[r * n_cols + c];
    }
    and_out[c] = a;
    or_out[c] = o;
  }
}

void sgemm(int m, int n, int k, const float* a, const float* b, float* c, bool accumulate) {
  for (int i = 0; i < m; ++i) {
    float* crow = c + static_cast<std::size_t>(i) * n;
    if (!accumulate) {
      for (int j = 0; j < n; ++j) crow[j] = 0.0f;
    }
    for (int p = 0; p < k; ++p) {
      const float av = a[static_cast<std::size_t>(i) * k + p];
      if (av == 0.0f) continue;
      const float* brow = b + static_cast<std::size_t>(p) * n;
      const __m256 va = _mm256_set1_ps(av);
      int j = 0;
      for (; j + 8 <= n; j += 8) {
        const __m256 acc = _mm256_loadu_ps(crow + j);
        _mm256_storeu_ps(crow + j, _mm256_fmadd_ps(va, _mm256_loadu_ps(brow + j), acc));
      }
      for (; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

}  // namespace penumbral::simd::avx2
