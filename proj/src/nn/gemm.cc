// Copyright 2026 The dctcomp Authors. All Rights Reserved.
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

#include "dctcomp/nn/gemm.h"

#include <cstddef>

namespace dctcomp::nn {

namespace {

// A element (r, p) is a[r * ars + p * acs].
template <typename T, int R, int J>
inline void MicroKernel(int k, const T* a, size_t ars, size_t acs, const T* b, int ldb, T* c,
                        int ldc) {
  T acc[R][J];
  for (int r = 0; r < R; ++r) {
    for (int j = 0; j < J; ++j) acc[r][j] = c[r * ldc + j];
  }
  for (int p = 0; p < k; ++p) {
    const T* bp = b + static_cast<size_t>(p) * ldb;
    for (int r = 0; r < R; ++r) {
      const T ar = a[r * ars + p * acs];
      for (int j = 0; j < J; ++j) acc[r][j] += ar * bp[j];
    }
  }
  for (int r = 0; r < R; ++r) {
    for (int j = 0; j < J; ++j) c[r * ldc + j] = acc[r][j];
  }
}

template <typename T, int R>
inline void RowBlock(int n, int k, const T* a, size_t ars, size_t acs, const T* b, T* c) {
  int j = 0;
  for (; j + 32 <= n; j += 32) MicroKernel<T, R, 32>(k, a, ars, acs, b + j, n, c + j, n);
  for (; j + 8 <= n; j += 8) MicroKernel<T, R, 8>(k, a, ars, acs, b + j, n, c + j, n);
  for (; j < n; ++j) MicroKernel<T, R, 1>(k, a, ars, acs, b + j, n, c + j, n);
}

template <typename T>
void Gemm(int m, int n, int k, const T* a, size_t ars, size_t acs, const T* b, T* c) {
  int i = 0;
  for (; i + 4 <= m; i += 4) RowBlock<T, 4>(n, k, a + i * ars, ars, acs, b, c + static_cast<size_t>(i) * n);
  for (; i < m; ++i) RowBlock<T, 1>(n, k, a + i * ars, ars, acs, b, c + static_cast<size_t>(i) * n);
}

}  // namespace

template <typename T>
void GemmAccumulate(int m, int n, int k, const T* a, const T* b, T* c) {
  Gemm(m, n, k, a, static_cast<size_t>(k), 1, b, c);
}

template <typename T>
void Transpose(int m, int n, const T* in, T* out) {
  constexpr int kTile = 16;
  for (int i0 = 0; i0 < m; i0 += kTile) {
    for (int j0 = 0; j0 < n; j0 += kTile) {
      const int i1 = i0 + kTile < m ? i0 + kTile : m;
      const int j1 = j0 + kTile < n ? j0 + kTile : n;
      for (int i = i0; i < i1; ++i) {
        for (int j = j0; j < j1; ++j) out[static_cast<size_t>(j) * m + i] = in[static_cast<size_t>(i) * n + j];
      }
    }
  }
}

template <typename T>
void GemmTransposeAAccumulate(int m, int n, int k, const T* a, const T* d, T* c) {
  Gemm(k, n, m, a, 1, static_cast<size_t>(k), d, c);
}

template void GemmAccumulate<float>(int, int, int, const float*, const float*, float*);
template void GemmAccumulate<double>(int, int, int, const double*, const double*, double*);
template void GemmTransposeAAccumulate<float>(int, int, int, const float*, const float*, float*);
template void GemmTransposeAAccumulate<double>(int, int, int, const double*, const double*,
                                               double*);
template void Transpose<float>(int, int, const float*, float*);
template void Transpose<double>(int, int, const double*, double*);

}  // namespace dctcomp::nn
