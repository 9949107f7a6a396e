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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "penumbral/simd/kernels.hpp"

namespace penumbral::simd {
namespace {

std::vector<Isa> vector_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (isa_supported(isa)) out.push_back(isa);
  }
  return out;
}

void run_fold(Isa isa, const std::uint64_t* rows, std::size_t n_rows, std::size_t n_cols,
              std::uint64_t* a, std::uint64_t* o) {
  switch (isa) {
    case Isa::kAvx2: avx2::fold_and_or(rows, n_rows, n_cols, a, o); break;
    case Isa::kNeon: neon::fold_and_or(rows, n_rows, n_cols, a, o); break;
    case Isa::kScalar: scalar::fold_and_or(rows, n_rows, n_cols, a, o); break;
  }
}

void run_gemm(Isa isa, int m, int n, int k, const float* a, const float* b, float* c, bool acc) {
  switch (isa) {
    case Isa::kAvx2: avx2::sgemm(m, n, k, a, b, c, acc); break;
    case Isa::kNeon: neon::sgemm(m, n, k, a, b, c, acc); break;
    case Isa::kScalar: scalar::sgemm(m, n, k, a, b, c, acc); break;
  }
}

TEST(Simd, ReportsActiveIsa) {
  const Isa isa = active_isa();
  EXPECT_TRUE(isa_supported(isa));
  std::printf("active isa: %s\n", isa_name(isa));
}

TEST(Simd, FoldMatchesScalarReference) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n_rows = 1 + rng() % 130;
    const std::size_t n_cols = 1 + rng() % 110;
    std::vector<std::uint64_t> rows(n_rows * n_cols);
    // Sparse and dense words so both folds have bits left to compare.
    for (auto& w : rows) w = (rng() % 2) ? rng() | rng() : rng() & rng();
    std::vector<std::uint64_t> and_ref(n_cols), or_ref(n_cols);
    scalar::fold_and_or(rows.data(), n_rows, n_cols, and_ref.data(), or_ref.data());
    for (std::size_t c = 0; c < n_cols; ++c) {
      std::uint64_t a = ~0ULL, o = 0;
      for (std::size_t r = 0; r < n_rows; ++r) {
        a &= rows[r * n_cols + c];
        o |= rows[r * n_cols + c];
      }
      ASSERT_EQ(and_ref[c], a);
      ASSERT_EQ(or_ref[c], o);
    }
    for (Isa isa : vector_isas()) {
      std::vector<std::uint64_t> a(n_cols), o(n_cols);
      run_fold(isa, rows.data(), n_rows, n_cols, a.data(), o.data());
      ASSERT_EQ(a, and_ref) << isa_name(isa);
      ASSERT_EQ(o, or_ref) << isa_name(isa);
    }
    std::vector<std::uint64_t> a(n_cols), o(n_cols);
    fold_and_or(rows.data(), n_rows, n_cols, a.data(), o.data());
    ASSERT_EQ(a, and_ref);
    ASSERT_EQ(o, or_ref);
  }
}

TEST(Simd, GemmMatchesScalarReference) {
  std::mt19937_64 rng(2);
  std::normal_distribution<float> normal(0.0f, 1.0f);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 40);
    const int n = 1 + static_cast<int>(rng() % 70);
    const int k = 1 + static_cast<int>(rng() % 300);
    const bool accumulate = rng() % 2;
    std::vector<float> a(m * k), b(k * n), seed(m * n);
    for (auto& v : a) v = (rng() % 5 == 0) ? 0.0f : normal(rng);
    for (auto& v : b) v = normal(rng);
    for (auto& v : seed) v = normal(rng);

    std::vector<double> exact(m * n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        double sum = accumulate ? seed[i * n + j] : 0.0;
        for (int p = 0; p < k; ++p) sum += static_cast<double>(a[i * k + p]) * b[p * n + j];
        exact[i * n + j] = sum;
      }
    }
    const double tol = 1e-5 * k;
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (!isa_supported(isa)) continue;
      std::vector<float> c = seed;
      run_gemm(isa, m, n, k, a.data(), b.data(), c.data(), accumulate);
      for (int i = 0; i < m * n; ++i) ASSERT_NEAR(c[i], exact[i], tol) << isa_name(isa);
    }
  }
}

}  // namespace
}  // namespace penumbral::simd
