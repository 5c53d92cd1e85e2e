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

#ifndef DCTCOMP_DCT_TRANSFORM_H_
#define DCTCOMP_DCT_TRANSFORM_H_

#include <array>
#include <cstdint>
#include <span>

#include "dctcomp/error.h"
#include "dctcomp/jpeg/tables.h"
#include "dctcomp/jpeg/types.h"

namespace dctcomp::dct {

using Block8x8 = std::array<double, 64>;

// Orthonormal 2-D DCT-II, S(u,v) = 1/4 C(u) C(v) sum x(y,x) cos(.) cos(.),
// with C(0) = 1/sqrt(2). Row-major in and out; output index is v * 8 + u
// (v vertical frequency).
Block8x8 FdctBlock(const Block8x8& samples);
// Exact inverse of FdctBlock.
Block8x8 IdctBlock(const Block8x8& coefficients);

// Per-coefficient multipliers for FastIdctBlock: quantizer step times the
// Arai-Agui-Nakajima row/column prescale, natural order.
using AanMultipliers = std::array<float, 64>;
AanMultipliers MakeAanMultipliers(const jpeg::QuantTable& table);

// Single-precision AAN inverse DCT of one quantized block, with
// de-quantization folded in. Writes level-shifted samples clamped to
// [0, 255], row-major; ties round to even.
void FastIdctBlock(const jpeg::CoefficientBlock& levels, const AanMultipliers& mult,
                   std::array<uint8_t, 64>& out);

// Inverse zigzag permutation of a 64-entry sequence. kWrongLength otherwise.
template <typename T>
std::array<T, 64> ZigzagToNatural(std::span<const T> seq) {
  if (seq.size() != 64) {
    throw Error(ErrorCode::kWrongLength, "expected 64 values, got " + std::to_string(seq.size()));
  }
  std::array<T, 64> out{};
  for (int k = 0; k < 64; ++k) out[jpeg::kZigzagToNatural[k]] = seq[k];
  return out;
}

template <typename T>
std::array<T, 64> NaturalToZigzag(std::span<const T> block) {
  if (block.size() != 64) {
    throw Error(ErrorCode::kWrongLength, "expected 64 values, got " + std::to_string(block.size()));
  }
  std::array<T, 64> out{};
  for (int k = 0; k < 64; ++k) out[k] = block[jpeg::kZigzagToNatural[k]];
  return out;
}

}  // namespace dctcomp::dct

#endif  // DCTCOMP_DCT_TRANSFORM_H_
