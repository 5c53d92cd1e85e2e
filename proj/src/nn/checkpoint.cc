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

#include "dctcomp/nn/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "dctcomp/error.h"

namespace dctcomp::nn {

namespace {

constexpr char kMagic[8] = {'D', 'C', 'T', 'C', 'N', 'N', 'C', 'K'};

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void PutU64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  uint64_t Get(int n) {
    Need(n);
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += n;
    return v;
  }
  float GetF32() { return std::bit_cast<float>(static_cast<uint32_t>(Get(4))); }
  std::string GetString(size_t n) {
    Need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void Need(size_t n) const {
    if (bytes_.size() - pos_ < n) throw Error(ErrorCode::kBadCheckpoint, "truncated checkpoint");
  }

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

// Visits every stored value in file order.
template <typename Fn>
void ForEachValue(Network<float>& net, Fn&& fn) {
  for (size_t i = 0; i < net.num_layers(); ++i) {
    Layer<float>& l = net.layer(i);
    for (Param<float>* p : l.Params()) {
      for (float& v : p->value) fn(v);
    }
    for (std::vector<float>* b : l.Buffers()) {
      for (float& v : *b) fn(v);
    }
  }
}

}  // namespace

std::vector<uint8_t> SerializeCheckpoint(Network<float>& net) {
  std::vector<uint8_t> out(kMagic, kMagic + 8);
  PutU32(out, kCheckpointVersion);
  PutU32(out, static_cast<uint32_t>(net.input_shape().h));
  PutU32(out, static_cast<uint32_t>(net.input_shape().w));
  PutU32(out, static_cast<uint32_t>(net.input_shape().c));
  PutU32(out, static_cast<uint32_t>(net.num_classes()));
  PutU32(out, static_cast<uint32_t>(net.arch().size()));
  out.insert(out.end(), net.arch().begin(), net.arch().end());
  uint64_t count = 0;
  ForEachValue(net, [&](float&) { ++count; });
  PutU64(out, count);
  out.reserve(out.size() + count * 4);
  ForEachValue(net, [&](float& v) { PutU32(out, std::bit_cast<uint32_t>(v)); });
  return out;
}

Network<float> DeserializeCheckpoint(std::span<const uint8_t> bytes) {
  Reader r(bytes);
  if (r.GetString(8) != std::string(kMagic, 8)) {
    throw Error(ErrorCode::kBadCheckpoint, "bad magic");
  }
  const uint32_t version = static_cast<uint32_t>(r.Get(4));
  if (version != kCheckpointVersion) {
    throw Error(ErrorCode::kBadCheckpoint, "unsupported version " + std::to_string(version));
  }
  Shape3 in;
  in.h = static_cast<int>(r.Get(4));
  in.w = static_cast<int>(r.Get(4));
  in.c = static_cast<int>(r.Get(4));
  const int classes = static_cast<int>(r.Get(4));
  const uint32_t arch_len = static_cast<uint32_t>(r.Get(4));
  const std::string arch = r.GetString(arch_len);
  Network<float> net = [&] {
    try {
      return Network<float>::Build(in, classes, arch, 0);
    } catch (const Error& e) {
      throw Error(ErrorCode::kBadCheckpoint, std::string("cannot rebuild network: ") + e.what());
    }
  }();
  const uint64_t count = r.Get(8);
  uint64_t expected = 0;
  ForEachValue(net, [&](float&) { ++expected; });
  if (count != expected) {
    throw Error(ErrorCode::kBadCheckpoint, "stores " + std::to_string(count) +
                                               " values, architecture needs " +
                                               std::to_string(expected));
  }
  ForEachValue(net, [&](float& v) { v = r.GetF32(); });
  if (r.remaining() != 0) throw Error(ErrorCode::kBadCheckpoint, "trailing bytes");
  return net;
}

void SaveCheckpoint(Network<float>& net, const std::filesystem::path& path) {
  const auto bytes = SerializeCheckpoint(net);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
}

Network<float> LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  const std::vector<uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>()};
  return DeserializeCheckpoint(bytes);
}

}  // namespace dctcomp::nn
