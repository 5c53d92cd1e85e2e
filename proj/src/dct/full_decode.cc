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

#include "dctcomp/dct/full_decode.h"

#include <algorithm>
#include <array>
#include <string>

#include "dctcomp/dct/planes.h"
#include "dctcomp/dct/transform.h"
#include "dctcomp/error.h"
#include "dctcomp/jpeg/codec.h"

namespace dctcomp::dct {

namespace {

inline uint8_t ClampByte(int v) { return static_cast<uint8_t>(std::clamp(v, 0, 255)); }

// JFIF YCbCr -> RGB in 16-bit fixed point, each chroma term rounded on its
// own (the common libjpeg arrangement).
constexpr int kFracBits = 16;
constexpr int kHalf = 1 << (kFracBits - 1);
constexpr int Fix(double x) { return static_cast<int>(x * (1 << kFracBits) + 0.5); }

inline int CrToR(int cr) { return (Fix(1.40200) * cr + kHalf) >> kFracBits; }
inline int CbToB(int cb) { return (Fix(1.77200) * cb + kHalf) >> kFracBits; }
inline int ChromaToG(int cb, int cr) {
  return (-Fix(0.34414) * cb - Fix(0.71414) * cr + kHalf) >> kFracBits;
}

}  // namespace

jpeg::PixelPlane ReconstructComponent(const jpeg::CoefficientGrid& grid,
                                      const jpeg::QuantTable& table) {
  if (table.id != grid.quant_table_id) {
    throw Error(ErrorCode::kTableMismatch,
                "component " + std::to_string(grid.component_id) + " uses table " +
                    std::to_string(grid.quant_table_id) + ", got table " + std::to_string(table.id));
  }
  const AanMultipliers mult = MakeAanMultipliers(table);
  jpeg::PixelPlane plane;
  plane.width = grid.blocks_wide * 8;
  plane.height = grid.blocks_high * 8;
  plane.samples.resize(static_cast<size_t>(plane.width) * plane.height);
  std::array<uint8_t, 64> px;
  for (int by = 0; by < grid.blocks_high; ++by) {
    for (int bx = 0; bx < grid.blocks_wide; ++bx) {
      FastIdctBlock(grid.At(bx, by), mult, px);
      for (int y = 0; y < 8; ++y) {
        int* row = &plane.samples[static_cast<size_t>(by * 8 + y) * plane.width + bx * 8];
        for (int x = 0; x < 8; ++x) row[x] = px[y * 8 + x];
      }
    }
  }
  return plane;
}

RgbImage FullDecode(const jpeg::CompressedImage& image) {
  const jpeg::FrameInfo& f = image.frame;
  const size_t n = f.components.size();
  if (n != 1 && n != 3) {
    throw Error(ErrorCode::kUnsupportedMarker,
                std::to_string(n) + "-component color conversion");
  }
  const std::vector<jpeg::CoefficientGrid> grids = jpeg::DecodeCoefficients(image);
  const int hmax = f.MaxHSamp();
  const int vmax = f.MaxVSamp();
  std::vector<jpeg::PixelPlane> planes(n);
  std::vector<int> sx(n), sy(n);
  for (size_t c = 0; c < n; ++c) {
    const jpeg::ComponentInfo& ci = f.components[c];
    if (hmax % ci.h_samp != 0 || vmax % ci.v_samp != 0) {
      throw Error(ErrorCode::kUnsupportedMarker, "non-integral chroma sampling ratio");
    }
    sx[c] = hmax / ci.h_samp;
    sy[c] = vmax / ci.v_samp;
    planes[c] = ReconstructComponent(grids[c], image.QuantTableFor(c));
  }

  RgbImage out(f.width, f.height);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      uint8_t* px = out.At(x, y);
      const int luma = planes[0].At(x / sx[0], y / sy[0]);
      if (n == 1) {
        px[0] = px[1] = px[2] = static_cast<uint8_t>(luma);
        continue;
      }
      const int cb = planes[1].At(x / sx[1], y / sy[1]) - 128;
      const int cr = planes[2].At(x / sx[2], y / sy[2]) - 128;
      px[0] = ClampByte(luma + CrToR(cr));
      px[1] = ClampByte(luma + ChromaToG(cb, cr));
      px[2] = ClampByte(luma + CbToB(cb));
    }
  }
  return out;
}

}  // namespace dctcomp::dct
