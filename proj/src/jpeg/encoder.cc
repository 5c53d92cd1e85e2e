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

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "dctcomp/dct/transform.h"
#include "dctcomp/error.h"
#include "dctcomp/jpeg/codec.h"
#include "dctcomp/jpeg/huffman.h"
#include "dctcomp/jpeg/tables.h"

namespace dctcomp::jpeg {

namespace {

constexpr int32_t kMaxAcLevel = 1023;
constexpr int32_t kMinDcLevel = -1024;
constexpr int32_t kMaxDcLevel = 1023;

int CeilDiv(int a, int b) { return (a + b - 1) / b; }

const QuantTable& FindTable(std::span<const QuantTable> tables, int id) {
  for (const auto& t : tables) {
    if (t.id == id) return t;
  }
  throw Error(ErrorCode::kBadTableSlot, "no quant table with id " + std::to_string(id));
}

int Category(int32_t v) {
  return v == 0 ? 0 : std::bit_width(static_cast<uint32_t>(v < 0 ? -v : v));
}

uint32_t ExtraBits(int32_t v, int size) {
  return static_cast<uint32_t>(v < 0 ? v + (1 << size) - 1 : v) & ((1u << size) - 1);
}

struct EntropyTables {
  HuffmanEncoder dc;
  HuffmanEncoder ac;
};

void EncodeBlock(BitWriter& w, const EntropyTables& t, const CoefficientBlock& block,
                 int32_t& dc_pred) {
  const int32_t diff = block[0] - dc_pred;
  dc_pred = block[0];
  const int dc_size = Category(diff);
  const HuffmanCode& dc_code = t.dc.CodeFor(static_cast<uint8_t>(dc_size));
  w.Write(dc_code.code, dc_code.length);
  w.Write(ExtraBits(diff, dc_size), dc_size);

  int run = 0;
  for (int k = 1; k < kBlockSize; ++k) {
    const int32_t v = block[kZigzagToNatural[k]];
    if (v == 0) {
      ++run;
      continue;
    }
    while (run > 15) {
      const HuffmanCode& zrl = t.ac.CodeFor(0xF0);
      w.Write(zrl.code, zrl.length);
      run -= 16;
    }
    const int size = Category(v);
    const HuffmanCode& code = t.ac.CodeFor(static_cast<uint8_t>((run << 4) | size));
    w.Write(code.code, code.length);
    w.Write(ExtraBits(v, size), size);
    run = 0;
  }
  if (run > 0) {
    const HuffmanCode& eob = t.ac.CodeFor(0x00);
    w.Write(eob.code, eob.length);
  }
}

}  // namespace

FrameInfo MakeFrame(int width, int height, int num_components, Subsampling subsampling,
                    bool chroma_table) {
  FrameInfo f;
  f.width = width;
  f.height = height;
  f.precision = 8;
  if (num_components == 1) {
    f.components.push_back({1, 1, 1, 0});
    return f;
  }
  if (num_components != 3) {
    throw Error(ErrorCode::kDimensionMismatch, "encoder takes 1 or 3 planes");
  }
  const int luma_samp = subsampling == Subsampling::k420 ? 2 : 1;
  const int chroma_q = chroma_table ? 1 : 0;
  f.components.push_back({1, luma_samp, luma_samp, 0});
  f.components.push_back({2, 1, 1, chroma_q});
  f.components.push_back({3, 1, 1, chroma_q});
  return f;
}

std::vector<CoefficientGrid> QuantizePlanes(std::span<const PixelPlane> planes,
                                            std::span<const QuantTable> tables,
                                            Subsampling subsampling) {
  if (planes.size() != 1 && planes.size() != 3) {
    throw Error(ErrorCode::kDimensionMismatch, "encoder takes 1 or 3 planes");
  }
  const int width = planes[0].width;
  const int height = planes[0].height;
  if (width < 1 || height < 1 || width > 65535 || height > 65535) {
    throw Error(ErrorCode::kDimensionMismatch, "image dimensions out of range");
  }
  const bool chroma_table = std::any_of(tables.begin(), tables.end(),
                                        [](const QuantTable& t) { return t.id == 1; });
  const FrameInfo frame =
      MakeFrame(width, height, static_cast<int>(planes.size()), subsampling, chroma_table);

  std::vector<CoefficientGrid> grids(planes.size());
  for (size_t c = 0; c < planes.size(); ++c) {
    const PixelPlane& p = planes[c];
    if (p.width != frame.ComponentWidth(c) || p.height != frame.ComponentHeight(c) ||
        p.samples.size() != static_cast<size_t>(p.width) * p.height) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "plane " + std::to_string(c) + " is " + std::to_string(p.width) + "x" +
                      std::to_string(p.height) + ", expected " +
                      std::to_string(frame.ComponentWidth(c)) + "x" +
                      std::to_string(frame.ComponentHeight(c)));
    }
    for (int s : p.samples) {
      if (s < 0 || s > 255) {
        throw Error(ErrorCode::kSampleOutOfRange, "sample " + std::to_string(s));
      }
    }
    const ComponentInfo& ci = frame.components[c];
    const QuantTable& qt = FindTable(tables, ci.quant_table_id);
    CoefficientGrid& g = grids[c];
    g.component_id = ci.id;
    g.quant_table_id = ci.quant_table_id;
    if (planes.size() == 1) {
      g.blocks_wide = CeilDiv(width, 8);
      g.blocks_high = CeilDiv(height, 8);
    } else {
      g.blocks_wide = frame.McusWide() * ci.h_samp;
      g.blocks_high = frame.McusHigh() * ci.v_samp;
    }
    g.blocks.resize(static_cast<size_t>(g.blocks_wide) * g.blocks_high);

    std::array<double, kBlockSize> natural_steps{};
    for (int k = 0; k < kBlockSize; ++k) natural_steps[kZigzagToNatural[k]] = qt.steps[k];

    for (int by = 0; by < g.blocks_high; ++by) {
      for (int bx = 0; bx < g.blocks_wide; ++bx) {
        dct::Block8x8 samples{};
        for (int y = 0; y < 8; ++y) {
          const int sy = std::min(by * 8 + y, p.height - 1);
          for (int x = 0; x < 8; ++x) {
            const int sx = std::min(bx * 8 + x, p.width - 1);
            samples[y * 8 + x] = p.At(sx, sy) - 128.0;
          }
        }
        const dct::Block8x8 coef = dct::FdctBlock(samples);
        CoefficientBlock& out = g.At(bx, by);
        for (int i = 0; i < kBlockSize; ++i) {
          const auto q = static_cast<int32_t>(std::lround(coef[i] / natural_steps[i]));
          out[i] = i == 0 ? std::clamp(q, kMinDcLevel, kMaxDcLevel)
                          : std::clamp(q, -kMaxAcLevel, kMaxAcLevel);
        }
      }
    }
  }
  return grids;
}

std::vector<uint8_t> EncodeCoefficients(const FrameInfo& frame,
                                        std::span<const CoefficientGrid> grids,
                                        std::span<const QuantTable> tables,
                                        int restart_interval) {
  if (grids.size() != frame.components.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one grid per component required");
  }
  CompressedImage img;
  img.frame = frame;
  img.restart_interval = restart_interval;
  for (const auto& t : tables) {
    if (t.id < 0 || t.id >= kNumTableSlots) {
      throw Error(ErrorCode::kBadTableSlot, "quant table id " + std::to_string(t.id));
    }
    img.quant_tables[t.id] = t;
  }
  for (size_t c = 0; c < frame.components.size(); ++c) img.QuantTableFor(c);

  img.dc_tables[0] = StdDcLuminance();
  img.ac_tables[0] = StdAcLuminance();
  const bool color = frame.components.size() > 1;
  if (color) {
    img.dc_tables[1] = StdDcChrominance();
    img.ac_tables[1] = StdAcChrominance();
  }
  const EntropyTables luma{HuffmanEncoder::Build(*img.dc_tables[0]),
                           HuffmanEncoder::Build(*img.ac_tables[0])};
  const EntropyTables chroma =
      color ? EntropyTables{HuffmanEncoder::Build(*img.dc_tables[1]),
                            HuffmanEncoder::Build(*img.ac_tables[1])}
            : luma;

  for (size_t c = 0; c < frame.components.size(); ++c) {
    const int t = c == 0 ? 0 : 1;
    img.scan.push_back({c, t, t});
  }

  std::vector<uint8_t>& data = img.entropy_data;
  BitWriter w(data);
  std::vector<int32_t> preds(grids.size(), 0);
  const bool interleaved = grids.size() > 1;
  const int total_mcus = interleaved ? frame.McusWide() * frame.McusHigh()
                                     : grids[0].blocks_wide * grids[0].blocks_high;
  int restarts = 0;
  for (int mcu = 0; mcu < total_mcus; ++mcu) {
    if (restart_interval > 0 && mcu > 0 && mcu % restart_interval == 0) {
      w.WriteRestartMarker(restarts++);
      std::fill(preds.begin(), preds.end(), 0);
    }
    if (!interleaved) {
      EncodeBlock(w, luma, grids[0].blocks[mcu], preds[0]);
      continue;
    }
    const int mx = mcu % frame.McusWide();
    const int my = mcu / frame.McusWide();
    for (size_t c = 0; c < grids.size(); ++c) {
      const ComponentInfo& ci = frame.components[c];
      for (int v = 0; v < ci.v_samp; ++v) {
        for (int h = 0; h < ci.h_samp; ++h) {
          EncodeBlock(w, c == 0 ? luma : chroma,
                      grids[c].At(mx * ci.h_samp + h, my * ci.v_samp + v), preds[c]);
        }
      }
    }
  }
  w.Flush();
  return WriteJpeg(img);
}

std::vector<uint8_t> EncodeJpeg(std::span<const PixelPlane> planes,
                                std::span<const QuantTable> tables,
                                const EncodeOptions& options) {
  const std::vector<CoefficientGrid> grids = QuantizePlanes(planes, tables, options.subsampling);
  const bool chroma_table = std::any_of(tables.begin(), tables.end(),
                                        [](const QuantTable& t) { return t.id == 1; });
  const FrameInfo frame = MakeFrame(planes[0].width, planes[0].height,
                                    static_cast<int>(planes.size()), options.subsampling,
                                    chroma_table);
  // Only the tables the frame references are written.
  std::vector<QuantTable> used;
  for (const auto& t : tables) {
    for (const auto& c : frame.components) {
      if (c.quant_table_id == t.id) {
        used.push_back(t);
        break;
      }
    }
  }
  return EncodeCoefficients(frame, grids, used, options.restart_interval);
}

}  // namespace dctcomp::jpeg
