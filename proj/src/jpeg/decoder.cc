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

#include <string>

#include "dctcomp/error.h"
#include "dctcomp/jpeg/codec.h"
#include "dctcomp/jpeg/huffman.h"
#include "dctcomp/jpeg/tables.h"

namespace dctcomp::jpeg {

namespace {

int CeilDiv(int a, int b) { return (a + b - 1) / b; }

inline int32_t Extend(uint32_t v, int s) {
  return v < (1u << (s - 1)) ? static_cast<int32_t>(v) - (1 << s) + 1
                             : static_cast<int32_t>(v);
}

struct ComponentState {
  const HuffmanDecoder* dc = nullptr;
  const HuffmanDecoder* ac = nullptr;
  CoefficientGrid* grid = nullptr;
  int32_t dc_pred = 0;
};

void DecodeBlock(BitReader& reader, ComponentState& st, CoefficientBlock& block) {
  block.fill(0);
  const int s = st.dc->Decode(reader);
  if (s > 11) throw Error(ErrorCode::kInvalidHuffmanCode, "DC category > 11");
  const int32_t diff = s == 0 ? 0 : Extend(reader.ReadBits(s), s);
  st.dc_pred += diff;
  block[0] = st.dc_pred;
  for (int k = 1; k < kBlockSize;) {
    const uint8_t rs = st.ac->Decode(reader);
    const int run = rs >> 4;
    const int size = rs & 15;
    if (size == 0) {
      if (run != 15) break;  // EOB
      k += 16;               // ZRL
      continue;
    }
    k += run;
    if (k >= kBlockSize || size > 10) {
      throw Error(ErrorCode::kInvalidHuffmanCode, "AC run past end of block");
    }
    block[kZigzagToNatural[k]] = Extend(reader.ReadBits(size), size);
    ++k;
  }
}

}  // namespace

std::vector<CoefficientGrid> DecodeCoefficients(const CompressedImage& image) {
  const FrameInfo& f = image.frame;
  const bool interleaved = image.scan.size() > 1;
  const int mcus_x = f.McusWide();
  const int mcus_y = f.McusHigh();

  std::vector<CoefficientGrid> grids(f.components.size());
  for (size_t c = 0; c < f.components.size(); ++c) {
    CoefficientGrid& g = grids[c];
    g.component_id = f.components[c].id;
    g.quant_table_id = f.components[c].quant_table_id;
    if (interleaved) {
      g.blocks_wide = mcus_x * f.components[c].h_samp;
      g.blocks_high = mcus_y * f.components[c].v_samp;
    } else {
      g.blocks_wide = CeilDiv(f.ComponentWidth(c), 8);
      g.blocks_high = CeilDiv(f.ComponentHeight(c), 8);
    }
    g.blocks.assign(static_cast<size_t>(g.blocks_wide) * g.blocks_high, CoefficientBlock{});
  }

  std::vector<HuffmanDecoder> decoders;
  decoders.reserve(2 * image.scan.size());
  std::vector<ComponentState> states(image.scan.size());
  for (size_t i = 0; i < image.scan.size(); ++i) {
    const ScanComponent& sc = image.scan[i];
    const auto& dc = image.dc_tables.at(sc.dc_table_id);
    const auto& ac = image.ac_tables.at(sc.ac_table_id);
    if (!dc || !ac) throw Error(ErrorCode::kBadTableSlot, "undefined Huffman table");
    decoders.push_back(HuffmanDecoder::Build(*dc));
    decoders.push_back(HuffmanDecoder::Build(*ac));
  }
  for (size_t i = 0; i < image.scan.size(); ++i) {
    states[i].dc = &decoders[2 * i];
    states[i].ac = &decoders[2 * i + 1];
    states[i].grid = &grids[image.scan[i].frame_index];
  }

  BitReader reader(image.entropy_data);
  const int total_mcus = interleaved ? mcus_x * mcus_y
                                     : grids[image.scan[0].frame_index].blocks_wide *
                                           grids[image.scan[0].frame_index].blocks_high;
  int restarts = 0;
  for (int mcu = 0; mcu < total_mcus; ++mcu) {
    if (image.restart_interval > 0 && mcu > 0 && mcu % image.restart_interval == 0) {
      reader.ReadRestartMarker(restarts++);
      for (auto& st : states) st.dc_pred = 0;
    }
    if (interleaved) {
      const int mx = mcu % mcus_x;
      const int my = mcu / mcus_x;
      for (size_t i = 0; i < states.size(); ++i) {
        const ComponentInfo& ci = f.components[image.scan[i].frame_index];
        for (int v = 0; v < ci.v_samp; ++v) {
          for (int h = 0; h < ci.h_samp; ++h) {
            DecodeBlock(reader, states[i],
                        states[i].grid->At(mx * ci.h_samp + h, my * ci.v_samp + v));
          }
        }
      }
    } else {
      DecodeBlock(reader, states[0], states[0].grid->blocks[mcu]);
    }
  }
  return grids;
}

}  // namespace dctcomp::jpeg
