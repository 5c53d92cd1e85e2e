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

#ifndef DCTCOMP_JPEG_TYPES_H_
#define DCTCOMP_JPEG_TYPES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace dctcomp::jpeg {

constexpr int kBlockSize = 64;
constexpr int kNumTableSlots = 4;

// 64 quantizer steps in zigzag order.
struct QuantTable {
  int id = 0;
  std::array<uint16_t, kBlockSize> steps{};

  bool IsUnit() const;
  static QuantTable Unit(int id);
};

enum class HuffClass : uint8_t { kDC = 0, kAC = 1 };

struct HuffTable {
  HuffClass table_class = HuffClass::kDC;
  int id = 0;
  // bits[i] is the number of codes of length i + 1.
  std::array<uint8_t, 16> bits{};
  std::vector<uint8_t> huffval;
};

struct ComponentInfo {
  int id = 0;
  int h_samp = 1;
  int v_samp = 1;
  int quant_table_id = 0;
};

struct FrameInfo {
  int width = 0;
  int height = 0;
  int precision = 8;
  std::vector<ComponentInfo> components;

  int MaxHSamp() const;
  int MaxVSamp() const;
  int McusWide() const;
  int McusHigh() const;
  // Samples per line of component `c` before padding, ceil(width * h / hmax).
  int ComponentWidth(size_t c) const;
  int ComponentHeight(size_t c) const;
};

// One component entry of the (single) scan header.
struct ScanComponent {
  size_t frame_index = 0;
  int dc_table_id = 0;
  int ac_table_id = 0;
};

// Everything the partial decoder needs: headers, tables and the untouched
// entropy coded payload (byte stuffing and RSTn markers preserved).
struct CompressedImage {
  FrameInfo frame;
  std::array<std::optional<QuantTable>, kNumTableSlots> quant_tables;
  std::array<std::optional<HuffTable>, kNumTableSlots> dc_tables;
  std::array<std::optional<HuffTable>, kNumTableSlots> ac_tables;
  std::vector<ScanComponent> scan;
  int restart_interval = 0;
  std::vector<uint8_t> entropy_data;

  // Quant table of frame component `c`; throws kBadTableSlot if unresolved.
  const QuantTable& QuantTableFor(size_t c) const;
};

// Natural-order (row-major frequency) coefficients of one 8x8 block.
using CoefficientBlock = std::array<int32_t, kBlockSize>;

struct CoefficientGrid {
  int component_id = 0;
  int quant_table_id = 0;
  int blocks_wide = 0;
  int blocks_high = 0;
  std::vector<CoefficientBlock> blocks;

  CoefficientBlock& At(int bx, int by) {
    return blocks[static_cast<size_t>(by) * blocks_wide + bx];
  }
  const CoefficientBlock& At(int bx, int by) const {
    return blocks[static_cast<size_t>(by) * blocks_wide + bx];
  }
};

}  // namespace dctcomp::jpeg

#endif  // DCTCOMP_JPEG_TYPES_H_
