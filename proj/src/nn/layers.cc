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

#include "dctcomp/nn/layers.h"

#include <algorithm>
#include <cmath>

#include "dctcomp/error.h"
#include "dctcomp/nn/gemm.h"

namespace dctcomp::nn {

namespace {

template <typename T>
void HeUniform(Param<T>& p, int fan_in, Rng& rng) {
  const double limit = std::sqrt(6.0 / fan_in);
  for (T& v : p.value) v = static_cast<T>(rng.Uniform(-limit, limit));
}

void RequireBatch(int expected_n, int got_n, const char* layer) {
  if (expected_n != got_n) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(layer) + ": backward batch " + std::to_string(got_n) +
                    " differs from forward batch " + std::to_string(expected_n));
  }
}

}  // namespace

std::string LayerKindName(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv: return "conv";
    case LayerKind::kBatchNorm: return "batchnorm";
    case LayerKind::kRelu: return "relu";
    case LayerKind::kMaxPool: return "maxpool";
    case LayerKind::kGlobalAvgPool: return "global_avg_pool";
    case LayerKind::kDense: return "dense";
  }
  return "unknown";
}

// ---------------------------------------------------------------- Conv2d

template <typename T>
Conv2d<T>::Conv2d(int in_channels, int out_channels, int kernel)
    : in_(in_channels), out_(out_channels), k_(kernel) {
  if (in_ < 1 || out_ < 1 || k_ < 1 || k_ % 2 == 0) {
    throw Error(ErrorCode::kBadArchConfig,
                "conv needs positive channels and an odd kernel, got in=" + std::to_string(in_) +
                    " out=" + std::to_string(out_) + " k=" + std::to_string(k_));
  }
  weight_.name = "weight";
  bias_.name = "bias";
  weight_.Resize(static_cast<size_t>(k_) * k_ * in_ * out_);
  bias_.Resize(out_);
}

template <typename T>
std::string Conv2d<T>::Describe() const {
  return "conv" + std::to_string(k_) + "x" + std::to_string(k_) + " " + std::to_string(in_) +
         "->" + std::to_string(out_);
}

template <typename T>
Shape3 Conv2d<T>::OutputShape(const Shape3& in) const {
  if (in.c != in_) {
    throw Error(ErrorCode::kShapeMismatch, Describe() + " got " + std::to_string(in.c) +
                                               " input channels");
  }
  return {in.h, in.w, out_};
}

template <typename T>
void Conv2d<T>::Initialize(Rng& rng) {
  HeUniform(weight_, k_ * k_ * in_, rng);
  std::fill(bias_.value.begin(), bias_.value.end(), T(0));
}

template <typename T>
void Conv2d<T>::Im2Col(const T* img, int h, int w, T* cols) const {
  const int pad = k_ / 2;
  const size_t row_len = static_cast<size_t>(k_) * k_ * in_;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      T* row = cols + (static_cast<size_t>(y) * w + x) * row_len;
      for (int ky = 0; ky < k_; ++ky) {
        const int sy = y + ky - pad;
        for (int kx = 0; kx < k_; ++kx) {
          const int sx = x + kx - pad;
          T* dst = row + (ky * k_ + kx) * in_;
          if (sy < 0 || sy >= h || sx < 0 || sx >= w) {
            std::fill(dst, dst + in_, T(0));
          } else {
            const T* src = img + (static_cast<size_t>(sy) * w + sx) * in_;
            std::copy(src, src + in_, dst);
          }
        }
      }
    }
  }
}

template <typename T>
void Conv2d<T>::Col2ImAdd(const T* cols, int h, int w, T* img) const {
  const int pad = k_ / 2;
  const size_t row_len = static_cast<size_t>(k_) * k_ * in_;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const T* row = cols + (static_cast<size_t>(y) * w + x) * row_len;
      for (int ky = 0; ky < k_; ++ky) {
        const int sy = y + ky - pad;
        if (sy < 0 || sy >= h) continue;
        for (int kx = 0; kx < k_; ++kx) {
          const int sx = x + kx - pad;
          if (sx < 0 || sx >= w) continue;
          const T* src = row + (ky * k_ + kx) * in_;
          T* dst = img + (static_cast<size_t>(sy) * w + sx) * in_;
          for (int ci = 0; ci < in_; ++ci) dst[ci] += src[ci];
        }
      }
    }
  }
}

template <typename T>
void Conv2d<T>::Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode /*mode*/) {
  const Shape3 os = OutputShape(in.sample_shape());
  out.Resize(in.n, os);
  const int hw = in.h * in.w;
  const int kk = k_ * k_ * in_;
  if (k_ > 1) cols_.resize(static_cast<size_t>(hw) * kk);
  for (int b = 0; b < in.n; ++b) {
    T* o = out.sample(b);
    for (int p = 0; p < hw; ++p) std::copy(bias_.value.begin(), bias_.value.end(), o + p * out_);
    const T* cols = in.sample(b);
    if (k_ > 1) {
      Im2Col(in.sample(b), in.h, in.w, cols_.data());
      cols = cols_.data();
    }
    GemmAccumulate(hw, out_, kk, cols, weight_.value.data(), o);
  }
}

template <typename T>
void Conv2d<T>::Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) {
  RequireBatch(in.n, dout.n, "conv");
  const int hw = in.h * in.w;
  const int kk = k_ * k_ * in_;
  din.Resize(in.n, in.sample_shape());
  std::fill(din.data.begin(), din.data.end(), T(0));
  std::fill(weight_.grad.begin(), weight_.grad.end(), T(0));
  std::fill(bias_.grad.begin(), bias_.grad.end(), T(0));
  wt_.resize(weight_.value.size());
  Transpose(kk, out_, weight_.value.data(), wt_.data());
  std::vector<T> dcols;
  if (k_ > 1) {
    cols_.resize(static_cast<size_t>(hw) * kk);
    dcols.resize(static_cast<size_t>(hw) * kk);
  }
  for (int b = 0; b < in.n; ++b) {
    const T* g = dout.sample(b);
    const T* cols = in.sample(b);
    if (k_ > 1) {
      Im2Col(in.sample(b), in.h, in.w, cols_.data());
      cols = cols_.data();
    }
    GemmTransposeAAccumulate(hw, out_, kk, cols, g, weight_.grad.data());
    for (int p = 0; p < hw; ++p) {
      for (int co = 0; co < out_; ++co) bias_.grad[co] += g[p * out_ + co];
    }
    if (k_ > 1) {
      std::fill(dcols.begin(), dcols.end(), T(0));
      GemmAccumulate(hw, kk, out_, g, wt_.data(), dcols.data());
      Col2ImAdd(dcols.data(), in.h, in.w, din.sample(b));
    } else {
      GemmAccumulate(hw, kk, out_, g, wt_.data(), din.sample(b));
    }
  }
}

// ------------------------------------------------------------- BatchNorm

template <typename T>
BatchNorm<T>::BatchNorm(int channels) : c_(channels) {
  if (c_ < 1) throw Error(ErrorCode::kBadArchConfig, "batchnorm needs >= 1 channel");
  gamma_.name = "gamma";
  beta_.name = "beta";
  gamma_.Resize(c_);
  beta_.Resize(c_);
  std::fill(gamma_.value.begin(), gamma_.value.end(), T(1));
  running_mean_.assign(c_, T(0));
  running_var_.assign(c_, T(1));
}

template <typename T>
std::string BatchNorm<T>::Describe() const {
  return "batchnorm " + std::to_string(c_);
}

template <typename T>
Shape3 BatchNorm<T>::OutputShape(const Shape3& in) const {
  if (in.c != c_) {
    throw Error(ErrorCode::kShapeMismatch,
                Describe() + " got " + std::to_string(in.c) + " channels");
  }
  return in;
}

template <typename T>
void BatchNorm<T>::Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode mode) {
  OutputShape(in.sample_shape());
  out.Resize(in.n, in.sample_shape());
  const size_t count = in.size() / c_;
  last_mode_ = mode;
  inv_std_.resize(c_);
  if (mode == Mode::kEval) {
    for (int ch = 0; ch < c_; ++ch) {
      inv_std_[ch] = static_cast<T>(1.0 / std::sqrt(static_cast<double>(running_var_[ch]) + kEps));
    }
    xhat_.resize(in.size());
    for (size_t i = 0; i < count; ++i) {
      for (int ch = 0; ch < c_; ++ch) {
        const size_t idx = i * c_ + ch;
        const T xh = (in.data[idx] - running_mean_[ch]) * inv_std_[ch];
        xhat_[idx] = xh;
        out.data[idx] = gamma_.value[ch] * xh + beta_.value[ch];
      }
    }
    return;
  }

  std::vector<double> mean(c_, 0.0), var(c_, 0.0);
  for (size_t i = 0; i < count; ++i) {
    for (int ch = 0; ch < c_; ++ch) mean[ch] += in.data[i * c_ + ch];
  }
  for (int ch = 0; ch < c_; ++ch) mean[ch] /= static_cast<double>(count);
  for (size_t i = 0; i < count; ++i) {
    for (int ch = 0; ch < c_; ++ch) {
      const double d = in.data[i * c_ + ch] - mean[ch];
      var[ch] += d * d;
    }
  }
  for (int ch = 0; ch < c_; ++ch) {
    const double biased = var[ch] / static_cast<double>(count);
    inv_std_[ch] = static_cast<T>(1.0 / std::sqrt(biased + kEps));
    const double unbiased = count > 1 ? var[ch] / static_cast<double>(count - 1) : biased;
    running_mean_[ch] = static_cast<T>(kMomentum * running_mean_[ch] + (1 - kMomentum) * mean[ch]);
    running_var_[ch] = static_cast<T>(kMomentum * running_var_[ch] + (1 - kMomentum) * unbiased);
  }
  xhat_.resize(in.size());
  for (size_t i = 0; i < count; ++i) {
    for (int ch = 0; ch < c_; ++ch) {
      const size_t idx = i * c_ + ch;
      const T xh = static_cast<T>((in.data[idx] - mean[ch]) * inv_std_[ch]);
      xhat_[idx] = xh;
      out.data[idx] = gamma_.value[ch] * xh + beta_.value[ch];
    }
  }
}

template <typename T>
void BatchNorm<T>::Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) {
  if (dout.size() != xhat_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "batchnorm backward without matching forward");
  }
  din.Resize(in.n, in.sample_shape());
  const size_t count = in.size() / c_;
  std::vector<double> dgamma(c_, 0.0), dbeta(c_, 0.0);
  for (size_t i = 0; i < count; ++i) {
    for (int ch = 0; ch < c_; ++ch) {
      const size_t idx = i * c_ + ch;
      dbeta[ch] += dout.data[idx];
      dgamma[ch] += static_cast<double>(dout.data[idx]) * xhat_[idx];
    }
  }
  for (int ch = 0; ch < c_; ++ch) {
    gamma_.grad[ch] = static_cast<T>(dgamma[ch]);
    beta_.grad[ch] = static_cast<T>(dbeta[ch]);
  }
  if (last_mode_ == Mode::kEval) {
    for (size_t i = 0; i < count; ++i) {
      for (int ch = 0; ch < c_; ++ch) {
        const size_t idx = i * c_ + ch;
        din.data[idx] = dout.data[idx] * gamma_.value[ch] * inv_std_[ch];
      }
    }
    return;
  }
  const double m = static_cast<double>(count);
  for (size_t i = 0; i < count; ++i) {
    for (int ch = 0; ch < c_; ++ch) {
      const size_t idx = i * c_ + ch;
      const double scale = static_cast<double>(gamma_.value[ch]) * inv_std_[ch] / m;
      din.data[idx] = static_cast<T>(
          scale * (m * dout.data[idx] - dbeta[ch] - static_cast<double>(xhat_[idx]) * dgamma[ch]));
    }
  }
}

// ------------------------------------------------------------------ Relu

template <typename T>
void Relu<T>::Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode /*mode*/) {
  out.Resize(in.n, in.sample_shape());
  for (size_t i = 0; i < in.size(); ++i) out.data[i] = in.data[i] > T(0) ? in.data[i] : T(0);
}

template <typename T>
void Relu<T>::Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) {
  if (dout.size() != in.size()) throw Error(ErrorCode::kShapeMismatch, "relu backward");
  din.Resize(in.n, in.sample_shape());
  for (size_t i = 0; i < in.size(); ++i) din.data[i] = in.data[i] > T(0) ? dout.data[i] : T(0);
}

// -------------------------------------------------------------- MaxPool2

template <typename T>
Shape3 MaxPool2<T>::OutputShape(const Shape3& in) const {
  if (in.h < 2 || in.w < 2) {
    throw Error(ErrorCode::kShapeMismatch, "maxpool2 needs at least 2x2, got " + in.ToString());
  }
  return {in.h / 2, in.w / 2, in.c};
}

template <typename T>
void MaxPool2<T>::Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode /*mode*/) {
  const Shape3 os = OutputShape(in.sample_shape());
  out.Resize(in.n, os);
  argmax_.resize(out.size());
  const int c = in.c;
  size_t o = 0;
  for (int b = 0; b < in.n; ++b) {
    const T* src = in.sample(b);
    for (int y = 0; y < os.h; ++y) {
      for (int x = 0; x < os.w; ++x) {
        for (int ch = 0; ch < c; ++ch, ++o) {
          uint32_t best = static_cast<uint32_t>(((2 * y) * in.w + 2 * x) * c + ch);
          for (int dy = 0; dy < 2; ++dy) {
            for (int dx = 0; dx < 2; ++dx) {
              const uint32_t idx = static_cast<uint32_t>(((2 * y + dy) * in.w + 2 * x + dx) * c + ch);
              if (src[idx] > src[best]) best = idx;
            }
          }
          argmax_[o] = best;
          out.data[o] = src[best];
        }
      }
    }
  }
}

template <typename T>
void MaxPool2<T>::Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) {
  if (dout.size() != argmax_.size()) throw Error(ErrorCode::kShapeMismatch, "maxpool backward");
  din.Resize(in.n, in.sample_shape());
  std::fill(din.data.begin(), din.data.end(), T(0));
  const size_t per = dout.sample_size();
  for (int b = 0; b < dout.n; ++b) {
    T* dst = din.sample(b);
    for (size_t i = 0; i < per; ++i) {
      const size_t o = b * per + i;
      dst[argmax_[o]] += dout.data[o];
    }
  }
}

// --------------------------------------------------------- GlobalAvgPool

template <typename T>
void GlobalAvgPool<T>::Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode /*mode*/) {
  out.Resize(in.n, 1, 1, in.c);
  const int hw = in.h * in.w;
  std::vector<double> acc(in.c);
  for (int b = 0; b < in.n; ++b) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const T* src = in.sample(b);
    for (int p = 0; p < hw; ++p) {
      for (int ch = 0; ch < in.c; ++ch) acc[ch] += src[p * in.c + ch];
    }
    for (int ch = 0; ch < in.c; ++ch) out.At(b, 0, 0, ch) = static_cast<T>(acc[ch] / hw);
  }
}

template <typename T>
void GlobalAvgPool<T>::Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) {
  if (dout.n != in.n || dout.c != in.c) throw Error(ErrorCode::kShapeMismatch, "gap backward");
  din.Resize(in.n, in.sample_shape());
  const int hw = in.h * in.w;
  const T scale = T(1) / static_cast<T>(hw);
  for (int b = 0; b < in.n; ++b) {
    T* dst = din.sample(b);
    for (int p = 0; p < hw; ++p) {
      for (int ch = 0; ch < in.c; ++ch) dst[p * in.c + ch] = dout.At(b, 0, 0, ch) * scale;
    }
  }
}

// ----------------------------------------------------------------- Dense

template <typename T>
Dense<T>::Dense(int in_features, int out_features) : in_(in_features), out_(out_features) {
  if (in_ < 1 || out_ < 1) throw Error(ErrorCode::kBadArchConfig, "dense needs positive sizes");
  weight_.name = "weight";
  bias_.name = "bias";
  weight_.Resize(static_cast<size_t>(in_) * out_);
  bias_.Resize(out_);
}

template <typename T>
std::string Dense<T>::Describe() const {
  return "dense " + std::to_string(in_) + "->" + std::to_string(out_);
}

template <typename T>
Shape3 Dense<T>::OutputShape(const Shape3& in) const {
  if (static_cast<int>(in.size()) != in_) {
    throw Error(ErrorCode::kShapeMismatch, Describe() + " got input " + in.ToString());
  }
  return {1, 1, out_};
}

template <typename T>
void Dense<T>::Initialize(Rng& rng) {
  HeUniform(weight_, in_, rng);
  std::fill(bias_.value.begin(), bias_.value.end(), T(0));
}

template <typename T>
void Dense<T>::Forward(const Tensor4<T>& in, Tensor4<T>& out, Mode /*mode*/) {
  OutputShape(in.sample_shape());
  out.Resize(in.n, 1, 1, out_);
  for (int b = 0; b < in.n; ++b) std::copy(bias_.value.begin(), bias_.value.end(), out.sample(b));
  GemmAccumulate(in.n, out_, in_, in.data.data(), weight_.value.data(), out.data.data());
}

template <typename T>
void Dense<T>::Backward(const Tensor4<T>& in, const Tensor4<T>& dout, Tensor4<T>& din) {
  RequireBatch(in.n, dout.n, "dense");
  din.Resize(in.n, in.sample_shape());
  std::fill(din.data.begin(), din.data.end(), T(0));
  std::fill(weight_.grad.begin(), weight_.grad.end(), T(0));
  GemmTransposeAAccumulate(in.n, out_, in_, in.data.data(), dout.data.data(),
                           weight_.grad.data());
  for (int co = 0; co < out_; ++co) {
    T acc = 0;
    for (int b = 0; b < in.n; ++b) acc += dout.data[static_cast<size_t>(b) * out_ + co];
    bias_.grad[co] = acc;
  }
  wt_.resize(weight_.value.size());
  Transpose(in_, out_, weight_.value.data(), wt_.data());
  GemmAccumulate(in.n, in_, out_, dout.data.data(), wt_.data(), din.data.data());
}

// ---------------------------------------------------------- Loss helpers

template <typename T>
std::vector<T> Softmax(const Tensor4<T>& logits) {
  const int c = static_cast<int>(logits.sample_size());
  std::vector<T> out(logits.size());
  for (int b = 0; b < logits.n; ++b) {
    const T* z = logits.sample(b);
    const T zmax = *std::max_element(z, z + c);
    double sum = 0;
    for (int j = 0; j < c; ++j) sum += std::exp(static_cast<double>(z[j] - zmax));
    for (int j = 0; j < c; ++j) {
      out[static_cast<size_t>(b) * c + j] =
          static_cast<T>(std::exp(static_cast<double>(z[j] - zmax)) / sum);
    }
  }
  return out;
}

template <typename T>
T SoftmaxCrossEntropy(const Tensor4<T>& logits, const std::vector<int>& labels,
                      Tensor4<T>* dlogits) {
  const int c = static_cast<int>(logits.sample_size());
  if (static_cast<int>(labels.size()) != logits.n) {
    throw Error(ErrorCode::kShapeMismatch, std::to_string(labels.size()) + " labels for batch " +
                                               std::to_string(logits.n));
  }
  for (int label : labels) {
    if (label < 0 || label >= c) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  "label " + std::to_string(label) + " not in [0, " + std::to_string(c) + ")");
    }
  }
  if (dlogits) dlogits->Resize(logits.n, logits.sample_shape());
  double total = 0;
  for (int b = 0; b < logits.n; ++b) {
    const T* z = logits.sample(b);
    const double zmax = *std::max_element(z, z + c);
    double sum = 0;
    for (int j = 0; j < c; ++j) sum += std::exp(z[j] - zmax);
    const double log_sum = std::log(sum);
    total += log_sum - (z[labels[b]] - zmax);
    if (dlogits) {
      T* g = dlogits->sample(b);
      for (int j = 0; j < c; ++j) {
        const double p = std::exp(z[j] - zmax - log_sum);
        g[j] = static_cast<T>((p - (j == labels[b] ? 1.0 : 0.0)) / logits.n);
      }
    }
  }
  return static_cast<T>(total / logits.n);
}

#define DCTCOMP_INSTANTIATE(T)                                                          \
  template class Conv2d<T>;                                                            \
  template class BatchNorm<T>;                                                         \
  template class Relu<T>;                                                              \
  template class MaxPool2<T>;                                                          \
  template class GlobalAvgPool<T>;                                                     \
  template class Dense<T>;                                                             \
  template std::vector<T> Softmax<T>(const Tensor4<T>&);                               \
  template T SoftmaxCrossEntropy<T>(const Tensor4<T>&, const std::vector<int>&, Tensor4<T>*);

DCTCOMP_INSTANTIATE(float)
DCTCOMP_INSTANTIATE(double)

#undef DCTCOMP_INSTANTIATE

}  // namespace dctcomp::nn
