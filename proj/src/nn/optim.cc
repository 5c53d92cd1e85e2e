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

#include "dctcomp/nn/optim.h"

#include <cmath>
#include <string>

#include "dctcomp/error.h"

namespace dctcomp::nn {

void Hyperparams::Validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kConfigInvalid, what); };
  if (!(base_lr > 0)) fail("base_lr must be > 0");
  if (!(decay > 0 && decay < 1)) fail("decay must be in (0, 1)");
  if (decay_every < 1) fail("decay_every must be >= 1");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (epochs < 1) fail("epochs must be >= 1");
  if (!(beta1 >= 0 && beta1 < 1) || !(beta2 >= 0 && beta2 < 1)) fail("Adam betas must be in [0, 1)");
  if (!(eps > 0)) fail("eps must be > 0");
}

double LrForEpoch(const Hyperparams& h, int epoch) {
  if (epoch < 0) throw Error(ErrorCode::kConfigInvalid, "negative epoch");
  return h.base_lr * std::pow(h.decay, epoch / h.decay_every);
}

template <typename T>
void Adam<T>::Step(const std::vector<Param<T>*>& params, double lr) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (Param<T>* p : params) {
    for (size_t i = 0; i < p->value.size(); ++i) {
      const double g = p->grad[i];
      const double m = beta1_ * p->m[i] + (1.0 - beta1_) * g;
      const double v = beta2_ * p->v[i] + (1.0 - beta2_) * g * g;
      p->m[i] = static_cast<T>(m);
      p->v[i] = static_cast<T>(v);
      const double m_hat = m / c1;
      const double v_hat = v / c2;
      p->value[i] = static_cast<T>(p->value[i] - lr * m_hat / (std::sqrt(v_hat) + eps_));
    }
  }
}

template class Adam<float>;
template class Adam<double>;

}  // namespace dctcomp::nn
