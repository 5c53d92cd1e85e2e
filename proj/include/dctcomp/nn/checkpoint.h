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

#ifndef DCTCOMP_NN_CHECKPOINT_H_
#define DCTCOMP_NN_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "dctcomp/nn/network.h"

namespace dctcomp::nn {

// Layout, all integers little-endian:
//   8 bytes   magic "DCTCNNCK"
//   u32       format version (1)
//   u32 x 4   input height, width, channels, number of classes
//   u32 + n   architecture string length and bytes
//   u64       number of values that follow
//   f32 ...   per layer: parameters in declaration order, then buffers
inline constexpr uint32_t kCheckpointVersion = 1;

std::vector<uint8_t> SerializeCheckpoint(Network<float>& net);
// Rebuilds the network from the echoed architecture. kBadCheckpoint on any
// mismatch, truncation or trailing data.
Network<float> DeserializeCheckpoint(std::span<const uint8_t> bytes);

// kIoFailure if the file cannot be written or read.
void SaveCheckpoint(Network<float>& net, const std::filesystem::path& path);
Network<float> LoadCheckpoint(const std::filesystem::path& path);

}  // namespace dctcomp::nn

#endif  // DCTCOMP_NN_CHECKPOINT_H_
