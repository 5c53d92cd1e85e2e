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

#ifndef DCTCOMP_NN_NETWORK_H_
#define DCTCOMP_NN_NETWORK_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dctcomp/nn/layers.h"
#include "dctcomp/nn/tensor.h"

namespace dctcomp::nn {

// Comma-separated blocks, followed implicitly by dense(num_classes):
//   c<N>[k<K>]  conv KxK (default 3) with N filters, batch norm, relu
//   p           2x2 max pool
//   g           global average pool
//   d<N>        dense N, relu
inline constexpr char kDefaultArch[] = "c32,c32,p,c64,c64,p,c128,g";

template <typename T>
class Network {
 public:
  // kBadArchConfig for unparsable configs, num_classes < 2, or shapes that
  // do not propagate.
  static Network Build(const Shape3& input, int num_classes, const std::string& arch,
                       uint64_t seed);

  // An empty network for hand-assembled layer stacks.
  explicit Network(const Shape3& input) : input_(input), output_(input) {}

  Network(Network&&) noexcept = default;
  Network& operator=(Network&&) noexcept = default;

  // Appends a layer; kShapeMismatch if it does not accept the current output.
  void Add(std::unique_ptr<Layer<T>> layer);

  const Shape3& input_shape() const { return input_; }
  const Shape3& output_shape() const { return output_; }
  int num_classes() const { return static_cast<int>(output_.size()); }
  const std::string& arch() const { return arch_; }
  size_t num_layers() const { return layers_.size(); }
  Layer<T>& layer(size_t i) { return *layers_[i]; }
  std::string Summary() const;

  // Returns logits (n x 1 x 1 x classes for classifier builds). Caches the
  // activations for Backward. kShapeMismatch on a wrong input shape.
  const Tensor4<T>& Forward(const Tensor4<T>& x, Mode mode);
  // Back-propagates `dout` through the cached forward pass, overwriting all
  // parameter gradients. Returns the gradient with respect to the input.
  const Tensor4<T>& Backward(const Tensor4<T>& dout);
  // Mean cross-entropy of the cached logits, followed by Backward.
  T LossAndBackward(const std::vector<int>& labels);

  std::vector<Param<T>*> Params();
  std::vector<std::vector<T>*> Buffers();
  size_t ParameterCount();

 private:
  Shape3 input_;
  Shape3 output_;
  std::string arch_;
  std::vector<std::unique_ptr<Layer<T>>> layers_;
  std::vector<Tensor4<T>> acts_;
  std::vector<Tensor4<T>> grads_;
  Tensor4<T> dlogits_;
};

// Index of the largest logit; the lowest index wins ties.
template <typename T>
int ArgmaxLowest(const T* logits, int count);

}  // namespace dctcomp::nn

#endif  // DCTCOMP_NN_NETWORK_H_
