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

#ifndef DCTCOMP_NN_TRAIN_H_
#define DCTCOMP_NN_TRAIN_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dctcomp/nn/network.h"
#include "dctcomp/nn/optim.h"
#include "dctcomp/nn/tensor.h"

namespace dctcomp::nn {

struct Batch {
  Tensor4<float> x;
  std::vector<int> labels;
};

// Random-access labelled samples. Fetch fills `out` with the samples at
// `indices`, in that order.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual size_t size() const = 0;
  virtual Shape3 shape() const = 0;
  virtual int num_classes() const = 0;
  virtual void Fetch(std::span<const size_t> indices, Batch& out) = 0;
};

class InMemorySource final : public SampleSource {
 public:
  // kShapeMismatch if labels and samples disagree in count.
  InMemorySource(Tensor4<float> samples, std::vector<int> labels, int num_classes);

  size_t size() const override { return labels_.size(); }
  Shape3 shape() const override { return samples_.sample_shape(); }
  int num_classes() const override { return num_classes_; }
  void Fetch(std::span<const size_t> indices, Batch& out) override;

 private:
  Tensor4<float> samples_;
  std::vector<int> labels_;
  int num_classes_;
};

struct EpochMetrics {
  int epoch = 0;
  double lr = 0;
  double mean_loss = 0;
  double train_accuracy = 0;
  // NaN when no evaluation source was given.
  double eval_accuracy = 0;
  int64_t steps = 0;
  // Training pass only; evaluation is timed separately.
  double wall_seconds = 0;
  double forward_seconds = 0;
  double eval_seconds = 0;
};

struct TrainResult {
  std::vector<EpochMetrics> epochs;
  int64_t optimizer_steps = 0;
};

struct EvalResult {
  double accuracy = 0;
  size_t correct = 0;
  size_t total = 0;
  double seconds = 0;
};

// Epoch e visits the training samples in a Fisher-Yates order drawn from
// (seed, e); the last batch may be partial. kEmptyDataset for an empty
// training source.
TrainResult Train(Network<float>& net, SampleSource& train, SampleSource* eval,
                  const Hyperparams& h,
                  const std::function<void(const EpochMetrics&)>& on_epoch = {});

// Eval-mode accuracy in dataset order. kEmptyDataset for an empty source.
EvalResult Evaluate(Network<float>& net, SampleSource& data, int batch_size);

// Correct predictions under ArgmaxLowest.
size_t CountCorrect(const Tensor4<float>& logits, const std::vector<int>& labels);

// The visiting order for one epoch.
std::vector<size_t> EpochOrder(size_t n, uint64_t seed, int epoch);

}  // namespace dctcomp::nn

#endif  // DCTCOMP_NN_TRAIN_H_
