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

#ifndef DCTCOMP_NN_TENSOR_H_
#define DCTCOMP_NN_TENSOR_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dctcomp/error.h"

namespace dctcomp::nn {

enum class Mode { kTrain, kEval };

// Per-sample dimensions.
struct Shape3 {
  int h = 0;
  int w = 0;
  int c = 0;

  size_t size() const { return static_cast<size_t>(h) * w * c; }
  bool operator==(const Shape3&) const = default;
  std::string ToString() const {
    return std::to_string(h) + "x" + std::to_string(w) + "x" + std::to_string(c);
  }
};

// Batch x height x width x channels, channels fastest.
template <typename T>
struct Tensor4 {
  int n = 0;
  int h = 0;
  int w = 0;
  int c = 0;
  std::vector<T> data;

  Tensor4() = default;
  Tensor4(int n_, int h_, int w_, int c_) { Resize(n_, h_, w_, c_); }

  void Resize(int n_, int h_, int w_, int c_) {
    if (n_ < 1 || h_ < 1 || w_ < 1 || c_ < 1) {
      throw Error(ErrorCode::kShapeMismatch,
                  "tensor dims must be >= 1, got " + std::to_string(n_) + "x" +
                      std::to_string(h_) + "x" + std::to_string(w_) + "x" + std::to_string(c_));
    }
    n = n_;
    h = h_;
    w = w_;
    c = c_;
    data.resize(static_cast<size_t>(n) * h * w * c);
  }
  void Resize(int n_, const Shape3& s) { Resize(n_, s.h, s.w, s.c); }

  Shape3 sample_shape() const { return {h, w, c}; }
  size_t sample_size() const { return static_cast<size_t>(h) * w * c; }
  size_t size() const { return data.size(); }

  T* sample(int i) { return data.data() + i * sample_size(); }
  const T* sample(int i) const { return data.data() + i * sample_size(); }

  T& At(int b, int y, int x, int ch) {
    return data[((static_cast<size_t>(b) * h + y) * w + x) * c + ch];
  }
  T At(int b, int y, int x, int ch) const {
    return data[((static_cast<size_t>(b) * h + y) * w + x) * c + ch];
  }
};

}  // namespace dctcomp::nn

#endif  // DCTCOMP_NN_TENSOR_H_
