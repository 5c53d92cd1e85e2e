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

#include "dctcomp/nn/train.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "dctcomp/error.h"
#include "dctcomp/nn/rng.h"

namespace dctcomp::nn {

namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

}  // namespace

InMemorySource::InMemorySource(Tensor4<float> samples, std::vector<int> labels, int num_classes)
    : samples_(std::move(samples)), labels_(std::move(labels)), num_classes_(num_classes) {
  if (static_cast<size_t>(samples_.n) != labels_.size()) {
    throw Error(ErrorCode::kShapeMismatch, std::to_string(samples_.n) + " samples but " +
                                               std::to_string(labels_.size()) + " labels");
  }
}

void InMemorySource::Fetch(std::span<const size_t> indices, Batch& out) {
  out.x.Resize(static_cast<int>(indices.size()), samples_.sample_shape());
  out.labels.resize(indices.size());
  const size_t per = samples_.sample_size();
  for (size_t i = 0; i < indices.size(); ++i) {
    const float* src = samples_.sample(static_cast<int>(indices[i]));
    std::copy(src, src + per, out.x.sample(static_cast<int>(i)));
    out.labels[i] = labels_[indices[i]];
  }
}

std::vector<size_t> EpochOrder(size_t n, uint64_t seed, int epoch) {
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<uint64_t>(epoch + 1)));
  rng.Shuffle(order);
  return order;
}

size_t CountCorrect(const Tensor4<float>& logits, const std::vector<int>& labels) {
  const int c = static_cast<int>(logits.sample_size());
  size_t correct = 0;
  for (int b = 0; b < logits.n; ++b) {
    if (ArgmaxLowest(logits.sample(b), c) == labels[b]) ++correct;
  }
  return correct;
}

EvalResult Evaluate(Network<float>& net, SampleSource& data, int batch_size) {
  if (data.size() == 0) throw Error(ErrorCode::kEmptyDataset, "nothing to evaluate");
  if (batch_size < 1) throw Error(ErrorCode::kConfigInvalid, "batch_size must be >= 1");
  const auto start = Clock::now();
  EvalResult r;
  Batch batch;
  std::vector<size_t> idx;
  for (size_t lo = 0; lo < data.size(); lo += batch_size) {
    const size_t hi = std::min(data.size(), lo + batch_size);
    idx.resize(hi - lo);
    std::iota(idx.begin(), idx.end(), lo);
    data.Fetch(idx, batch);
    r.correct += CountCorrect(net.Forward(batch.x, Mode::kEval), batch.labels);
    r.total += idx.size();
  }
  r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.total);
  r.seconds = Since(start);
  return r;
}

TrainResult Train(Network<float>& net, SampleSource& train, SampleSource* eval,
                  const Hyperparams& h, const std::function<void(const EpochMetrics&)>& on_epoch) {
  h.Validate();
  if (train.size() == 0) throw Error(ErrorCode::kEmptyDataset, "empty training set");
  if (train.shape() != net.input_shape()) {
    throw Error(ErrorCode::kShapeMismatch, "training samples are " + train.shape().ToString() +
                                               ", network expects " +
                                               net.input_shape().ToString());
  }
  Adam<float> adam(h);
  const auto params = net.Params();
  TrainResult result;
  Batch batch;
  for (int epoch = 0; epoch < h.epochs; ++epoch) {
    EpochMetrics m;
    m.epoch = epoch;
    m.lr = LrForEpoch(h, epoch);
    const auto order = EpochOrder(train.size(), h.seed, epoch);
    const auto start = Clock::now();
    double loss_sum = 0;
    size_t correct = 0;
    for (size_t lo = 0; lo < order.size(); lo += h.batch_size) {
      const size_t hi = std::min(order.size(), lo + static_cast<size_t>(h.batch_size));
      train.Fetch(std::span<const size_t>(order.data() + lo, hi - lo), batch);
      const auto fwd = Clock::now();
      const Tensor4<float>& logits = net.Forward(batch.x, Mode::kTrain);
      m.forward_seconds += Since(fwd);
      correct += CountCorrect(logits, batch.labels);
      const float loss = net.LossAndBackward(batch.labels);
      loss_sum += static_cast<double>(loss) * static_cast<double>(hi - lo);
      adam.Step(params, m.lr);
      ++m.steps;
    }
    m.wall_seconds = Since(start);
    m.mean_loss = loss_sum / static_cast<double>(train.size());
    m.train_accuracy = static_cast<double>(correct) / static_cast<double>(train.size());
    m.eval_accuracy = std::numeric_limits<double>::quiet_NaN();
    if (eval != nullptr) {
      const EvalResult er = Evaluate(net, *eval, h.batch_size);
      m.eval_accuracy = er.accuracy;
      m.eval_seconds = er.seconds;
    }
    result.optimizer_steps += m.steps;
    result.epochs.push_back(m);
    if (on_epoch) on_epoch(m);
  }
  return result;
}

}  // namespace dctcomp::nn
