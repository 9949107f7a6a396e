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

#include "penumbral/simd/kernels.hpp"

namespace penumbral::simd::scalar {

void fold_and_or(const std::uint64_t* rows, std::size_t n_rows, std::size_t n_cols,
                 std::uint64_t* and_out, std::uint64_t* or_out) {
  for (std::size_t c = 0; c < n_cols; ++c) {
    and_out[c] = rows[c];
    or_out[c] = rows[c];
  }
  for (std::size_t r = 1; r < n_rows; ++r) {
    const std::uint64_t* row = rows + r * n_cols;
    for (std::size_t c = 0; c < n_cols; ++c) {
      and_out[c] &= row[c];
      or_out[c] |= row[c];
    }
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
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

}  // namespace penumbral::simd::scalar
