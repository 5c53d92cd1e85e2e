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

#ifndef DCTCOMP_NN_OPTIM_H_
#define DCTCOMP_NN_OPTIM_H_

#include <cstdint>
#include <vector>

#include "dctcomp/nn/layers.h"

namespace dctcomp::nn {

struct Hyperparams {
  double base_lr = 0.01;
  // Multiplied into the rate once per `decay_every` epochs.
  double decay = 0.9;
  int decay_every = 10;
  int batch_size = 128;
  int epochs = 100;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  uint64_t seed = 1;

  // kConfigInvalid on out-of-range values.
  void Validate() const;
};

// base_lr * decay^floor(epoch / decay_every).
double LrForEpoch(const Hyperparams& h, int epoch);

// Bias-corrected Adam; moments live in each Param.
template <typename T>
class Adam {
 public:
  Adam(double beta1, double beta2, double eps) : beta1_(beta1), beta2_(beta2), eps_(eps) {}
  explicit Adam(const Hyperparams& h) : Adam(h.beta1, h.beta2, h.eps) {}

  void Step(const std::vector<Param<T>*>& params, double lr);
  int64_t steps() const { return t_; }

 private:
  double beta1_;
  double beta2_;
  double eps_;
  int64_t t_ = 0;
};

}  // namespace dctcomp::nn

#endif  // DCTCOMP_NN_OPTIM_H_
