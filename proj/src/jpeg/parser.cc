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
#include <cstdio>
#include <string>

#include "dctcomp/error.h"
#include "dctcomp/jpeg/codec.h"
#include "dctcomp/jpeg/huffman.h"
#include "dctcomp/jpeg/tables.h"

namespace dctcomp::jpeg {

namespace {

constexpr uint8_t kSOF0 = 0xC0;
constexpr uint8_t kSOF1 = 0xC1;
constexpr uint8_t kDHT = 0xC4;
constexpr uint8_t kDAC = 0xCC;
constexpr uint8_t kSOI = 0xD8;
constexpr uint8_t kEOI = 0xD9;
constexpr uint8_t kSOS = 0xDA;
constexpr uint8_t kDQT = 0xDB;
constexpr uint8_t kDNL = 0xDC;
constexpr uint8_t kDRI = 0xDD;
constexpr uint8_t kCOM = 0xFE;

std::string Hex(uint8_t marker) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "0xFF%02X", marker);
  return buf;
}

int CeilDiv(int a, int b) { return (a + b - 1) / b; }

// Bounds-checked cursor over one marker segment's payload.
class SegmentReader {
 public:
  SegmentReader(std::span<const uint8_t> payload, uint8_t marker)
      : data_(payload), marker_(marker) {}

  uint8_t U8() {
    if (pos_ >= data_.size()) {
      throw Error(ErrorCode::kMalformedSegment, "segment " + Hex(marker_) + " too short");
    }
    return data_[pos_++];
  }
  uint16_t U16() {
    const uint16_t hi = U8();
    return static_cast<uint16_t>((hi << 8) | U8());
  }
  bool done() const { return pos_ >= data_.size(); }

 private:
  std::span<const uint8_t> data_;
  uint8_t marker_;
  size_t pos_ = 0;
};

bool IsUnsupportedFrame(uint8_t m) {
  // SOF2..SOF15 except DHT (C4), JPG (C8) and DAC (CC).
  return m >= 0xC2 && m <= 0xCF && m != kDHT && m != 0xC8 && m != kDAC;
}

void ParseFrame(SegmentReader& r, CompressedImage& img) {
  FrameInfo& f = img.frame;
  f.precision = r.U8();
  f.height = r.U16();
  f.width = r.U16();
  const int n = r.U8();
  if (f.precision != 8) {
    throw Error(ErrorCode::kUnsupportedMarker,
                "sample precision " + std::to_string(f.precision));
  }
  if (f.width == 0 || f.height == 0) {
    throw Error(ErrorCode::kMalformedSegment, "zero frame dimension (DNL unsupported)");
  }
  if (n < 1 || n > 4) {
    throw Error(ErrorCode::kMalformedSegment, std::to_string(n) + " components");
  }
  f.components.clear();
  for (int i = 0; i < n; ++i) {
    ComponentInfo c;
    c.id = r.U8();
    const uint8_t samp = r.U8();
    c.h_samp = samp >> 4;
    c.v_samp = samp & 15;
    c.quant_table_id = r.U8();
    if (c.h_samp < 1 || c.h_samp > 4 || c.v_samp < 1 || c.v_samp > 4) {
      throw Error(ErrorCode::kMalformedSegment, "sampling factor out of range");
    }
    if (c.quant_table_id >= kNumTableSlots) {
      throw Error(ErrorCode::kBadTableSlot,
                  "quant table " + std::to_string(c.quant_table_id));
    }
    f.components.push_back(c);
  }
}

void ParseQuantTables(SegmentReader& r, CompressedImage& img) {
  while (!r.done()) {
    const uint8_t pq_tq = r.U8();
    const int precision = pq_tq >> 4;
    const int id = pq_tq & 15;
    if (id >= kNumTableSlots) {
      throw Error(ErrorCode::kBadTableSlot, "DQT slot " + std::to_string(id));
    }
    if (precision > 1) {
      throw Error(ErrorCode::kMalformedSegment, "DQT precision " + std::to_string(precision));
    }
    QuantTable t;
    t.id = id;
    for (int k = 0; k < kBlockSize; ++k) {
      t.steps[k] = precision == 0 ? r.U8() : r.U16();
      if (t.steps[k] == 0) throw Error(ErrorCode::kMalformedSegment, "zero quantizer step");
    }
    img.quant_tables[id] = t;
  }
}

void ParseHuffmanTables(SegmentReader& r, CompressedImage& img) {
  while (!r.done()) {
    const uint8_t tc_th = r.U8();
    const int cls = tc_th >> 4;
    const int id = tc_th & 15;
    if (cls > 1 || id >= kNumTableSlots) {
      throw Error(ErrorCode::kBadTableSlot,
                  "DHT class " + std::to_string(cls) + " slot " + std::to_string(id));
    }
    HuffTable t;
    t.table_class = cls == 0 ? HuffClass::kDC : HuffClass::kAC;
    t.id = id;
    int total = 0;
    for (auto& b : t.bits) {
      b = r.U8();
      total += b;
    }
    if (total > 256) throw Error(ErrorCode::kOverfullCodeSpace, "more than 256 codes");
    t.huffval.resize(total);
    for (auto& v : t.huffval) v = r.U8();
    GenerateCanonicalCodes(t);  // validates code space
    (cls == 0 ? img.dc_tables : img.ac_tables)[id] = std::move(t);
  }
}

void ParseScanHeader(SegmentReader& r, CompressedImage& img) {
  if (img.frame.components.empty()) {
    throw Error(ErrorCode::kMalformedSegment, "SOS before SOF");
  }
  const int n = r.U8();
  img.scan.clear();
  for (int i = 0; i < n; ++i) {
    const int cid = r.U8();
    const uint8_t td_ta = r.U8();
    const auto& comps = img.frame.components;
    auto it = std::find_if(comps.begin(), comps.end(),
                           [cid](const ComponentInfo& c) { return c.id == cid; });
    if (it == comps.end()) {
      throw Error(ErrorCode::kMalformedSegment, "scan references unknown component");
    }
    ScanComponent sc;
    sc.frame_index = static_cast<size_t>(it - comps.begin());
    sc.dc_table_id = td_ta >> 4;
    sc.ac_table_id = td_ta & 15;
    if (sc.dc_table_id >= kNumTableSlots || !img.dc_tables[sc.dc_table_id] ||
        sc.ac_table_id >= kNumTableSlots || !img.ac_tables[sc.ac_table_id]) {
      throw Error(ErrorCode::kBadTableSlot, "scan references undefined Huffman table");
    }
    img.scan.push_back(sc);
  }
  const int ss = r.U8();
  const int se = r.U8();
  const int ah_al = r.U8();
  if (ss != 0 || se != 63 || ah_al != 0) {
    throw Error(ErrorCode::kUnsupportedMarker, "non-baseline spectral selection");
  }
  if (img.scan.size() != img.frame.components.size()) {
    throw Error(ErrorCode::kUnsupportedMarker, "multi-scan sequential streams");
  }
  for (size_t c = 0; c < img.frame.components.size(); ++c) img.QuantTableFor(c);
}

// Returns the offset of the marker that terminates the entropy segment.
size_t FindScanEnd(std::span<const uint8_t> bytes, size_t pos) {
  while (pos + 1 < bytes.size()) {
    if (bytes[pos] != 0xFF) {
      ++pos;
      continue;
    }
    const uint8_t next = bytes[pos + 1];
    if (next == 0x00 || (next >= 0xD0 && next <= 0xD7)) {
      pos += 2;
    } else if (next == 0xFF) {
      // Fill bytes ahead of a marker belong to the marker.
      size_t q = pos + 1;
      while (q + 1 < bytes.size() && bytes[q + 1] == 0xFF) ++q;
      if (q + 1 < bytes.size() && bytes[q + 1] != 0x00 &&
          !(bytes[q + 1] >= 0xD0 && bytes[q + 1] <= 0xD7)) {
        return pos;
      }
      pos = q;
    } else {
      return pos;
    }
  }
  throw Error(ErrorCode::kTruncatedStream, "entropy data not terminated by a marker");
}

void PutU16(std::vector<uint8_t>& out, int v) {
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v & 0xFF));
}

}  // namespace

bool QuantTable::IsUnit() const {
  return std::all_of(steps.begin(), steps.end(), [](uint16_t s) { return s == 1; });
}

QuantTable QuantTable::Unit(int id) {
  QuantTable t;
  t.id = id;
  t.steps.fill(1);
  return t;
}

int FrameInfo::MaxHSamp() const {
  int m = 1;
  for (const auto& c : components) m = std::max(m, c.h_samp);
  return m;
}

int FrameInfo::MaxVSamp() const {
  int m = 1;
  for (const auto& c : components) m = std::max(m, c.v_samp);
  return m;
}

int FrameInfo::McusWide() const { return CeilDiv(width, 8 * MaxHSamp()); }
int FrameInfo::McusHigh() const { return CeilDiv(height, 8 * MaxVSamp()); }

int FrameInfo::ComponentWidth(size_t c) const {
  return CeilDiv(width * components[c].h_samp, MaxHSamp());
}

int FrameInfo::ComponentHeight(size_t c) const {
  return CeilDiv(height * components[c].v_samp, MaxVSamp());
}

const QuantTable& CompressedImage::QuantTableFor(size_t c) const {
  const int id = frame.components.at(c).quant_table_id;
  if (id < 0 || id >= kNumTableSlots || !quant_tables[id]) {
    throw Error(ErrorCode::kBadTableSlot,
                "component " + std::to_string(frame.components[c].id) +
                    " references undefined quant table " + std::to_string(id));
  }
  return *quant_tables[id];
}

CompressedImage ParseJpeg(std::span<const uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 0xFF || bytes[1] != kSOI) {
    throw Error(ErrorCode::kMissingSOI, "stream does not start with 0xFFD8");
  }
  CompressedImage img;
  bool have_frame = false;
  bool have_scan = false;
  size_t pos = 2;
  while (true) {
    if (pos >= bytes.size()) {
      throw Error(ErrorCode::kTruncatedStream, "no EOI marker");
    }
    if (bytes[pos] != 0xFF) {
      throw Error(ErrorCode::kMalformedSegment,
                  "expected marker at offset " + std::to_string(pos));
    }
    while (pos < bytes.size() && bytes[pos] == 0xFF) ++pos;
    if (pos >= bytes.size()) throw Error(ErrorCode::kTruncatedStream, "dangling 0xFF");
    const uint8_t marker = bytes[pos++];

    if (marker == kEOI) {
      if (!have_scan) throw Error(ErrorCode::kTruncatedStream, "EOI before any scan");
      break;
    }
    if (marker == kSOI || (marker >= 0xD0 && marker <= 0xD7) || marker == 0x01) {
      throw Error(ErrorCode::kMalformedSegment, "unexpected " + Hex(marker));
    }
    if (IsUnsupportedFrame(marker) || marker == kDAC || marker == kDNL) {
      throw Error(ErrorCode::kUnsupportedMarker, Hex(marker));
    }
    if (pos + 2 > bytes.size()) throw Error(ErrorCode::kTruncatedStream, "segment length");
    const size_t length = (static_cast<size_t>(bytes[pos]) << 8) | bytes[pos + 1];
    if (length < 2) throw Error(ErrorCode::kMalformedSegment, "segment length < 2");
    if (pos + length > bytes.size()) {
      throw Error(ErrorCode::kTruncatedStream, "segment " + Hex(marker) + " runs past end");
    }
    SegmentReader seg(bytes.subspan(pos + 2, length - 2), marker);
    pos += length;

    switch (marker) {
      case kSOF0:
      case kSOF1:
        if (have_frame) throw Error(ErrorCode::kMalformedSegment, "second SOF");
        ParseFrame(seg, img);
        have_frame = true;
        break;
      case kDQT:
        ParseQuantTables(seg, img);
        break;
      case kDHT:
        ParseHuffmanTables(seg, img);
        break;
      case kDRI:
        img.restart_interval = seg.U16();
        break;
      case kSOS: {
        if (have_scan) throw Error(ErrorCode::kUnsupportedMarker, "second SOS");
        ParseScanHeader(seg, img);
        const size_t end = FindScanEnd(bytes, pos);
        img.entropy_data.assign(bytes.begin() + pos, bytes.begin() + end);
        if (img.entropy_data.empty()) {
          throw Error(ErrorCode::kTruncatedStream, "empty entropy segment");
        }
        pos = end;
        have_scan = true;
        break;
      }
      default:
        if ((marker >= 0xE0 && marker <= 0xEF) || marker == kCOM) break;
        throw Error(ErrorCode::kUnsupportedMarker, Hex(marker));
    }
  }
  return img;
}

std::vector<uint8_t> WriteJpeg(const CompressedImage& img) {
  std::vector<uint8_t> out = {0xFF, kSOI};
  // APP0: JFIF 1.01, no units, 1:1 density, no thumbnail.
  const uint8_t app0[] = {0xFF, 0xE0, 0x00, 0x10, 'J', 'F', 'I', 'F', 0x00,
                          0x01, 0x01, 0x00, 0x00, 0x01, 0x00, 0x01, 0x00, 0x00};
  out.insert(out.end(), std::begin(app0), std::end(app0));

  for (const auto& qt : img.quant_tables) {
    if (!qt) continue;
    const bool wide = std::any_of(qt->steps.begin(), qt->steps.end(),
                                  [](uint16_t s) { return s > 255; });
    out.push_back(0xFF);
    out.push_back(kDQT);
    PutU16(out, 2 + 1 + (wide ? 128 : 64));
    out.push_back(static_cast<uint8_t>((wide ? 0x10 : 0x00) | qt->id));
    for (uint16_t s : qt->steps) {
      if (wide) out.push_back(static_cast<uint8_t>(s >> 8));
      out.push_back(static_cast<uint8_t>(s & 0xFF));
    }
  }

  const FrameInfo& f = img.frame;
  out.push_back(0xFF);
  out.push_back(kSOF0);
  PutU16(out, 8 + 3 * static_cast<int>(f.components.size()));
  out.push_back(static_cast<uint8_t>(f.precision));
  PutU16(out, f.height);
  PutU16(out, f.width);
  out.push_back(static_cast<uint8_t>(f.components.size()));
  for (const auto& c : f.components) {
    out.push_back(static_cast<uint8_t>(c.id));
    out.push_back(static_cast<uint8_t>((c.h_samp << 4) | c.v_samp));
    out.push_back(static_cast<uint8_t>(c.quant_table_id));
  }

  auto put_huff = [&out](const HuffTable& t) {
    out.push_back(0xFF);
    out.push_back(kDHT);
    PutU16(out, 2 + 1 + 16 + static_cast<int>(t.huffval.size()));
    out.push_back(static_cast<uint8_t>((static_cast<int>(t.table_class) << 4) | t.id));
    out.insert(out.end(), t.bits.begin(), t.bits.end());
    out.insert(out.end(), t.huffval.begin(), t.huffval.end());
  };
  for (const auto& t : img.dc_tables) {
    if (t) put_huff(*t);
  }
  for (const auto& t : img.ac_tables) {
    if (t) put_huff(*t);
  }

  if (img.restart_interval > 0) {
    out.push_back(0xFF);
    out.push_back(kDRI);
    PutU16(out, 4);
    PutU16(out, img.restart_interval);
  }

  out.push_back(0xFF);
  out.push_back(kSOS);
  PutU16(out, 6 + 2 * static_cast<int>(img.scan.size()));
  out.push_back(static_cast<uint8_t>(img.scan.size()));
  for (const auto& sc : img.scan) {
    out.push_back(static_cast<uint8_t>(f.components[sc.frame_index].id));
    out.push_back(static_cast<uint8_t>((sc.dc_table_id << 4) | sc.ac_table_id));
  }
  out.push_back(0);
  out.push_back(63);
  out.push_back(0);

  out.insert(out.end(), img.entropy_data.begin(), img.entropy_data.end());
  out.push_back(0xFF);
  out.push_back(kEOI);
  return out;
}

}  // namespace dctcomp::jpeg
