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

#ifndef DCTCOMP_NN_GEMM_H_
#define DCTCOMP_NN_GEMM_H_

namespace dctcomp::nn {

// Row-major, dense leading dimensions. Each output element accumulates over
// the reduction index in increasing order, independent of blocking.

// C[M x N] += A[M x K] * B[K x N]
template <typename T>
void GemmAccumulate(int m, int n, int k, const T* a, const T* b, T* c);

// C[K x N] += A[M x K]^T * D[M x N]
template <typename T>
void GemmTransposeAAccumulate(int m, int n, int k, const T* a, const T* d, T* c);

// out[N x M] = in[M x N]^T
template <typename T>
void Transpose(int m, int n, const T* in, T* out);

}  // namespace dctcomp::nn

#endif  // DCTCOMP_NN_GEMM_H_
