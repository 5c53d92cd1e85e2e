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

#ifndef DCTCOMP_NN_LAYERS_H_
#define DCTCOMP_NN_LAYERS_H_

#include <memory>
#include <string>
#include <vector>

#include "dctcomp/nn/rng.h"
#include "dctcomp/nn/tensor.h"

namespace dctcomp::nn {

enum class LayerKind { kConv, kBatchNorm, kRelu, kMaxPool, kGlobalAvgPool, kDense };

std::string LayerKindName(LayerKind kind);

// A trainable array with its gradient and Adam moments.
template <typename T>
struct Param {
  std::string name;
  std::vector<T> value;
  std::vector<T> grad;
  std::vector<T> m;
  std::vector<T> v;

  void Resize(size_t n) {
    value.assign(n, T(0));
    grad.assign(n, T(0));
    m.assign(n, T(0));
    v.assign(n, T(0));
  }
};

template <typename T>
class Layer {
 public:
  virtual ~Layer() = default;

  virtual LayerKind kind() const = 0;
  virtual std::string Describe() const = 0;
  // kShapeMismatch if the layer cannot accept `in`.
  virtual Shape3 OutputShape(const Shape3& in) const = 0;
  virtual void Initialize(Rng& /*rng*/) {}

  // Caches whatever Backward needs from this call.
  virtual void Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode mode) = 0;
  // Overwrites parameter gradients and `din` for the batch last seen by
  // Forward.
  virtual void Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) = 0;

  virtual std::vector<Param<T>*> Params() { return {}; }
  // Non-trainable state saved with the parameters (batch-norm statistics).
  virtual std::vector<std::vector<T>*> Buffers() { return {}; }
};

// Stride 1, zero padding k/2 ("same" output size for odd k). Weights are
// (k*k*in) x out with row index (ky*k + kx)*in + ci.
template <typename T>
class Conv2d final : public Layer<T> {
 public:
  Conv2d(int in_channels, int out_channels, int kernel);

  LayerKind kind() const override { return LayerKind::kConv; }
  std::string Describe() const override;
  Shape3 OutputShape(const Shape3& in) const override;
  void Initialize(Rng& rng) override;
  void Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode mode) override;
  void Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) override;
  std::vector<Param<T>*> Params() override { return {&weight_, &bias_}; }

  Param<T>& weight() { return weight_; }
  Param<T>& bias() { return bias_; }

 private:
  void Im2Col(const T* img, int h, int w, T* cols) const;
  void Col2ImAdd(const T* cols, int h, int w, T* img) const;

  int in_, out_, k_;
  Param<T> weight_;
  Param<T> bias_;
  std::vector<T> cols_;
  std::vector<T> wt_;
};

// Per-channel normalization over batch and spatial positions. Running
// statistics use momentum 0.9 and the unbiased batch variance.
template <typename T>
class BatchNorm final : public Layer<T> {
 public:
  static constexpr double kEps = 1e-5;
  static constexpr double kMomentum = 0.9;

  explicit BatchNorm(int channels);

  LayerKind kind() const override { return LayerKind::kBatchNorm; }
  std::string Describe() const override;
  Shape3 OutputShape(const Shape3& in) const override;
  void Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode mode) override;
  void Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) override;
  std::vector<Param<T>*> Params() override { return {&gamma_, &beta_}; }
  std::vector<std::vector<T>*> Buffers() override { return {&running_mean_, &running_var_}; }

  Param<T>& gamma() { return gamma_; }
  Param<T>& beta() { return beta_; }
  const std::vector<T>& running_mean() const { return running_mean_; }
  const std::vector<T>& running_var() const { return running_var_; }

 private:
  int c_;
  Param<T> gamma_;
  Param<T> beta_;
  std::vector<T> running_mean_;
  std::vector<T> running_var_;
  // Cached from the last train-mode forward.
  std::vector<T> xhat_;
  std::vector<T> inv_std_;
  Mode last_mode_ = Mode::kEval;
};

template <typename T>
class Relu final : public Layer<T> {
 public:
  LayerKind kind() const override { return LayerKind::kRelu; }
  std::string Describe() const override { return "relu"; }
  Shape3 OutputShape(const Shape3& in) const override { return in; }
  void Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode mode) override;
  void Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) override;
};

// 2x2 window, stride 2; a trailing odd row or column is dropped.
template <typename T>
class MaxPool2 final : public Layer<T> {
 public:
  LayerKind kind() const override { return LayerKind::kMaxPool; }
  std::string Describe() const override { return "maxpool2"; }
  Shape3 OutputShape(const Shape3& in) const override;
  void Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode mode) override;
  void Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) override;

 private:
  std::vector<uint32_t> argmax_;
};

template <typename T>
class GlobalAvgPool final : public Layer<T> {
 public:
  LayerKind kind() const override { return LayerKind::kGlobalAvgPool; }
  std::string Describe() const override { return "global_avg_pool"; }
  Shape3 OutputShape(const Shape3& in) const override { return {1, 1, in.c}; }
  void Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode mode) override;
  void Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) override;
};

// Fully connected over the flattened sample. Weights are in x out.
template <typename T>
class Dense final : public Layer<T> {
 public:
  Dense(int in_features, int out_features);

  LayerKind kind() const override { return LayerKind::kDense; }
  std::string Describe() const override;
  Shape3 OutputShape(const Shape3& in) const override;
  void Initialize(Rng& rng) override;
  void Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode mode) override;
  void Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) override;
  std::vector<Param<T>*> Params() override { return {&weight_, &bias_}; }

  Param<T>& weight() { return weight_; }
  Param<T>& bias() { return bias_; }

 private:
  int in_, out_;
  Param<T> weight_;
  Param<T> bias_;
  std::vector<T> wt_;
};

// Mean softmax cross-entropy over the batch. `logits` is n x 1 x 1 x C.
// Fills `dlogits` (same shape) with the gradient of the mean loss.
// kLabelOutOfRange for labels outside [0, C).
template <typename T>
T SoftmaxCrossEntropy(const Tensor4<T>& logits, const std::vector<int>& labels,
                      Tensor4<T>* dlogits);

// Row-wise softmax of n x 1 x 1 x C logits, computed stably.
template <typename T>
std::vector<T> Softmax(const Tensor4<T>& logits);

}  // namespace dctcomp::nn

#endif  // DCTCOMP_NN_LAYERS_H_
