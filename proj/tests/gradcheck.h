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

// Central finite-difference checks for layers and networks in double
// precision. Shared by the unit tests and the acceptance runner.

#ifndef DCTCOMP_TESTS_GRADCHECK_H_
#define DCTCOMP_TESTS_GRADCHECK_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dctcomp/nn/layers.h"
#include "dctcomp/nn/network.h"
#include "dctcomp/nn/rng.h"

namespace dctcomp::testing {

inline constexpr double kFdStep = 1e-5;
// Gradients smaller than this are compared absolutely.
inline constexpr double kGradFloor = 1e-6;

struct GradCheckStats {
  int checked = 0;
  double max_rel_error = 0;
  std::string worst;

  void Add(double analytic, double numeric, const std::string& where) {
    const double denom = std::max({std::abs(analytic), std::abs(numeric), kGradFloor});
    const double rel = std::abs(analytic - numeric) / denom;
    ++checked;
    if (rel > max_rel_error) {
      max_rel_error = rel;
      worst = where + " analytic " + std::to_string(analytic) + " numeric " +
              std::to_string(numeric);
    }
  }
  void Merge(const GradCheckStats& o) {
    checked += o.checked;
    if (o.max_rel_error > max_rel_error) {
      max_rel_error = o.max_rel_error;
      worst = o.worst;
    }
  }
};

// Loss = sum(proj * f(x)) for a fixed random projection, so every output
// contributes to the gradient.
inline GradCheckStats CheckLayerGradients(nn::Layer<double>& layer, nn::Tensor4<double> x,
                                          nn::Mode mode, nn::Rng& rng, int coords) {
  nn::Tensor4<double> y;
  layer.Forward(x, y, mode);
  nn::Tensor4<double> proj = y;
  for (double& v : proj.data) v = rng.Uniform(-1, 1);
  auto loss = [&](const nn::Tensor4<double>& in) {
    nn::Tensor4<double> out;
    layer.Forward(in, out, mode);
    double s = 0;
    for (size_t i = 0; i < out.size(); ++i) s += proj.data[i] * out.data[i];
    return s;
  };
  // Forward again so the cache matches x, then take analytic gradients.
  layer.Forward(x, y, mode);
  nn::Tensor4<double> dx;
  layer.Backward(x, proj, dx);
  std::vector<std::vector<double>> param_grads;
  for (auto* p : layer.Params()) param_grads.push_back(p->grad);

  GradCheckStats stats;
  const std::string name = nn::LayerKindName(layer.kind());
  for (int i = 0; i < coords; ++i) {
    const size_t idx = rng.Below(x.size());
    const double orig = x.data[idx];
    x.data[idx] = orig + kFdStep;
    const double up = loss(x);
    x.data[idx] = orig - kFdStep;
    const double down = loss(x);
    x.data[idx] = orig;
    stats.Add(dx.data[idx], (up - down) / (2 * kFdStep), name + " input[" + std::to_string(idx) + "]");
  }
  auto params = layer.Params();
  size_t total = 0;
  for (auto* p : params) total += p->value.size();
  for (int i = 0; total > 0 && i < coords; ++i) {
    size_t flat = rng.Below(total);
    size_t which = 0;
    while (flat >= params[which]->value.size()) flat -= params[which++]->value.size();
    double& w = params[which]->value[flat];
    const double orig = w;
    w = orig + kFdStep;
    const double up = loss(x);
    w = orig - kFdStep;
    const double down = loss(x);
    w = orig;
    stats.Add(param_grads[which][flat], (up - down) / (2 * kFdStep),
              name + " " + params[which]->name + "[" + std::to_string(flat) + "]");
  }
  return stats;
}

inline GradCheckStats CheckSoftmaxXentGradients(const nn::Tensor4<double>& logits,
                                                const std::vector<int>& labels, nn::Rng& rng,
                                                int coords) {
  nn::Tensor4<double> grad;
  nn::SoftmaxCrossEntropy(logits, labels, &grad);
  nn::Tensor4<double> z = logits;
  GradCheckStats stats;
  for (int i = 0; i < coords; ++i) {
    const size_t idx = rng.Below(z.size());
    const double orig = z.data[idx];
    z.data[idx] = orig + kFdStep;
    const double up = nn::SoftmaxCrossEntropy<double>(z, labels, nullptr);
    z.data[idx] = orig - kFdStep;
    const double down = nn::SoftmaxCrossEntropy<double>(z, labels, nullptr);
    z.data[idx] = orig;
    stats.Add(grad.data[idx], (up - down) / (2 * kFdStep),
              "softmax_xent logit[" + std::to_string(idx) + "]");
  }
  return stats;
}

// Distinct values at least `gap` apart, in random positions, centred on zero
// and kept `gap` away from it: no relu kink or max-pool tie within reach of
// the finite-difference step.
inline nn::Tensor4<double> SeparatedInput(nn::Rng& rng, int n, int h, int w, int c, double gap) {
  nn::Tensor4<double> t(n, h, w, c);
  std::vector<double> vals(t.size());
  for (size_t i = 0; i < vals.size(); ++i) {
    const double k = static_cast<double>(i) - static_cast<double>(vals.size()) / 2.0;
    vals[i] = (k >= 0 ? k + 0.5 : k - 0.5) * gap;
  }
  rng.Shuffle(vals);
  t.data = vals;
  return t;
}

inline nn::Tensor4<double> RandomInput(nn::Rng& rng, int n, int h, int w, int c) {
  nn::Tensor4<double> t(n, h, w, c);
  for (double& v : t.data) v = rng.Uniform(-1, 1);
  return t;
}

// One random shape per call, covering every layer kind. Results are merged
// per kind name.
inline void CheckAllLayerKinds(nn::Rng& rng, int coords,
                               const std::function<void(const std::string&, const GradCheckStats&)>& report) {
  auto dim = [&](int lo, int hi) { return lo + static_cast<int>(rng.Below(hi - lo + 1)); };
  {
    const int k = std::vector<int>{1, 3, 5}[rng.Below(3)];
    const int cin = dim(1, 4), cout = dim(1, 5);
    nn::Conv2d<double> conv(cin, cout, k);
    conv.Initialize(rng);
    for (double& b : conv.bias().value) b = rng.Uniform(-0.5, 0.5);
    report("conv", CheckLayerGradients(conv, RandomInput(rng, dim(1, 3), dim(1, 7), dim(1, 7), cin),
                                       nn::Mode::kTrain, rng, coords));
  }
  {
    const int c = dim(1, 5);
    nn::BatchNorm<double> bn(c);
    for (double& g : bn.gamma().value) g = rng.Uniform(0.5, 1.5);
    for (double& b : bn.beta().value) b = rng.Uniform(-0.5, 0.5);
    nn::Tensor4<double> x = RandomInput(rng, dim(2, 4), dim(1, 5), dim(1, 5), c);
    report("batchnorm", CheckLayerGradients(bn, x, nn::Mode::kTrain, rng, coords));
    nn::Tensor4<double> y;
    bn.Forward(x, y, nn::Mode::kTrain);  // non-trivial running statistics
    report("batchnorm", CheckLayerGradients(bn, x, nn::Mode::kEval, rng, coords));
  }
  {
    nn::Relu<double> relu;
    report("relu", CheckLayerGradients(relu, SeparatedInput(rng, dim(1, 3), dim(1, 6), dim(1, 6), dim(1, 4), 1e-2),
                                       nn::Mode::kTrain, rng, coords));
  }
  {
    nn::MaxPool2<double> pool;
    report("maxpool", CheckLayerGradients(pool, SeparatedInput(rng, dim(1, 3), dim(2, 7), dim(2, 7), dim(1, 4), 1e-2),
                                          nn::Mode::kTrain, rng, coords));
  }
  {
    nn::GlobalAvgPool<double> gap;
    report("global_avg_pool", CheckLayerGradients(gap, RandomInput(rng, dim(1, 3), dim(1, 6), dim(1, 6), dim(1, 5)),
                                                  nn::Mode::kTrain, rng, coords));
  }
  {
    const int h = dim(1, 3), w = dim(1, 3), c = dim(1, 4);
    nn::Dense<double> dense(h * w * c, dim(1, 6));
    dense.Initialize(rng);
    for (double& b : dense.bias().value) b = rng.Uniform(-0.5, 0.5);
    report("dense", CheckLayerGradients(dense, RandomInput(rng, dim(1, 4), h, w, c), nn::Mode::kTrain,
                                        rng, coords));
  }
  {
    const int n = dim(1, 5), classes = dim(2, 8);
    nn::Tensor4<double> z = RandomInput(rng, n, 1, 1, classes);
    for (double& v : z.data) v *= 3;
    std::vector<int> labels(n);
    for (int& l : labels) l = static_cast<int>(rng.Below(classes));
    report("softmax_xent", CheckSoftmaxXentGradients(z, labels, rng, coords));
  }
}

}  // namespace dctcomp::testing

#endif  // DCTCOMP_TESTS_GRADCHECK_H_
