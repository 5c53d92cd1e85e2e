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

#include "dctcomp/nn/network.h"

#include <cctype>
#include <sstream>

#include "dctcomp/error.h"
#include "dctcomp/nn/rng.h"

namespace dctcomp::nn {

namespace {

struct Token {
  char op = 0;
  int count = 0;
  int kernel = 3;
};

int ParsePositive(const std::string& s, size_t& pos, const std::string& token) {
  const size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start || pos - start > 6) {
    throw Error(ErrorCode::kBadArchConfig, "expected a count in '" + token + "'");
  }
  const int v = std::stoi(s.substr(start, pos - start));
  if (v < 1) throw Error(ErrorCode::kBadArchConfig, "zero count in '" + token + "'");
  return v;
}

std::vector<Token> ParseArch(const std::string& arch) {
  std::vector<Token> tokens;
  std::stringstream ss(arch);
  std::string raw;
  while (std::getline(ss, raw, ',')) {
    std::string t;
    for (char ch : raw) {
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    }
    if (t.empty()) throw Error(ErrorCode::kBadArchConfig, "empty block in '" + arch + "'");
    Token tok;
    tok.op = t[0];
    size_t pos = 1;
    switch (tok.op) {
      case 'c':
        tok.count = ParsePositive(t, pos, t);
        if (pos < t.size() && t[pos] == 'k') {
          ++pos;
          tok.kernel = ParsePositive(t, pos, t);
          if (tok.kernel % 2 == 0) throw Error(ErrorCode::kBadArchConfig, "even kernel in '" + t + "'");
        }
        break;
      case 'd':
        tok.count = ParsePositive(t, pos, t);
        break;
      case 'p':
      case 'g':
        break;
      default:
        throw Error(ErrorCode::kBadArchConfig, "unknown block '" + t + "'");
    }
    if (pos != t.size()) throw Error(ErrorCode::kBadArchConfig, "trailing text in '" + t + "'");
    tokens.push_back(tok);
  }
  if (tokens.empty()) throw Error(ErrorCode::kBadArchConfig, "empty architecture");
  return tokens;
}

}  // namespace

template <typename T>
int ArgmaxLowest(const T* logits, int count) {
  int best = 0;
  for (int i = 1; i < count; ++i) {
    if (logits[i] > logits[best]) best = i;
  }
  return best;
}

template <typename T>
Network<T> Network<T>::Build(const Shape3& input, int num_classes, const std::string& arch,
                             uint64_t seed) {
  if (num_classes < 2) {
    throw Error(ErrorCode::kBadArchConfig, "need >= 2 classes, got " + std::to_string(num_classes));
  }
  if (input.h < 1 || input.w < 1 || input.c < 1) {
    throw Error(ErrorCode::kBadArchConfig, "bad input shape " + input.ToString());
  }
  Network net(input);
  net.arch_ = arch;
  try {
    for (const Token& t : ParseArch(arch)) {
      const int c = net.output_.c;
      switch (t.op) {
        case 'c':
          net.Add(std::make_unique<Conv2d<T>>(c, t.count, t.kernel));
          net.Add(std::make_unique<BatchNorm<T>>(t.count));
          net.Add(std::make_unique<Relu<T>>());
          break;
        case 'p':
          net.Add(std::make_unique<MaxPool2<T>>());
          break;
        case 'g':
          net.Add(std::make_unique<GlobalAvgPool<T>>());
          break;
        case 'd':
          net.Add(std::make_unique<Dense<T>>(static_cast<int>(net.output_.size()), t.count));
          net.Add(std::make_unique<Relu<T>>());
          break;
      }
    }
    net.Add(std::make_unique<Dense<T>>(static_cast<int>(net.output_.size()), num_classes));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBadArchConfig) throw;
    throw Error(ErrorCode::kBadArchConfig,
                "'" + arch + "' on input " + input.ToString() + ": " + e.what());
  }
  Rng rng(seed);
  for (auto& l : net.layers_) l->Initialize(rng);
  return net;
}

template <typename T>
void Network<T>::Add(std::unique_ptr<Layer<T>> layer) {
  output_ = layer->OutputShape(output_);
  layers_.push_back(std::move(layer));
}

template <typename T>
std::string Network<T>::Summary() const {
  std::string s = "input " + input_.ToString() + "\n";
  Shape3 shape = input_;
  for (const auto& l : layers_) {
    shape = l->OutputShape(shape);
    s += "  " + l->Describe() + " -> " + shape.ToString() + "\n";
  }
  return s;
}

template <typename T>
const Tensor4<T>& Network<T>::Forward(const Tensor4<T>& x, Mode mode) {
  if (x.sample_shape() != input_) {
    throw Error(ErrorCode::kShapeMismatch,
                "network expects " + input_.ToString() + ", got " + x.sample_shape().ToString());
  }
  acts_.resize(layers_.size() + 1);
  acts_[0] = x;
  for (size_t i = 0; i < layers_.size(); ++i) layers_[i]->Forward(acts_[i], acts_[i + 1], mode);
  return acts_.back();
}

template <typename T>
const Tensor4<T>& Network<T>::Backward(const Tensor4<T>& dout) {
  if (acts_.size() != layers_.size() + 1) {
    throw Error(ErrorCode::kShapeMismatch, "backward before forward");
  }
  if (dout.size() != acts_.back().size()) {
    throw Error(ErrorCode::kShapeMismatch, "output gradient does not match the last forward");
  }
  grads_.resize(layers_.size() + 1);
  grads_.back() = dout;
  for (size_t i = layers_.size(); i-- > 0;) {
    layers_[i]->Backward(acts_[i], grads_[i + 1], grads_[i]);
  }
  return grads_[0];
}

template <typename T>
T Network<T>::LossAndBackward(const std::vector<int>& labels) {
  if (acts_.empty()) throw Error(ErrorCode::kShapeMismatch, "loss before forward");
  const T loss = SoftmaxCrossEntropy(acts_.back(), labels, &dlogits_);
  Backward(dlogits_);
  return loss;
}

template <typename T>
std::vector<Param<T>*> Network<T>::Params() {
  std::vector<Param<T>*> out;
  for (auto& l : layers_) {
    for (Param<T>* p : l->Params()) out.push_back(p);
  }
  return out;
}

template <typename T>
std::vector<std::vector<T>*> Network<T>::Buffers() {
  std::vector<std::vector<T>*> out;
  for (auto& l : layers_) {
    for (std::vector<T>* b : l->Buffers()) out.push_back(b);
  }
  return out;
}

template <typename T>
size_t Network<T>::ParameterCount() {
  size_t n = 0;
  for (Param<T>* p : Params()) n += p->value.size();
  return n;
}

template class Network<float>;
template class Network<double>;
template int ArgmaxLowest<float>(const float*, int);
template int ArgmaxLowest<double>(const double*, int);

}  // namespace dctcomp::nn
