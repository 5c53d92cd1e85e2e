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

#include "dctcomp/jpeg/huffman.h"

#include <numeric>
#include <string>

#include "dctcomp/error.h"

namespace dctcomp::jpeg {

std::vector<HuffmanCode> GenerateCanonicalCodes(const HuffTable& table) {
  const int total = std::accumulate(table.bits.begin(), table.bits.end(), 0);
  if (total > 256) {
    throw Error(ErrorCode::kOverfullCodeSpace,
                "table declares " + std::to_string(total) + " codes");
  }
  if (static_cast<size_t>(total) != table.huffval.size()) {
    throw Error(ErrorCode::kMalformedSegment,
                "huffval length does not match code counts");
  }
  std::vector<HuffmanCode> codes;
  codes.reserve(total);
  uint32_t code = 0;
  for (int len = 1; len <= 16; ++len) {
    for (int i = 0; i < table.bits[len - 1]; ++i) {
      codes.push_back({static_cast<uint16_t>(code), static_cast<uint8_t>(len)});
      ++code;
    }
    if (code > (1u << len)) {
      throw Error(ErrorCode::kOverfullCodeSpace,
                  "too many codes of length " + std::to_string(len));
    }
    code <<= 1;
  }
  return codes;
}

void BitReader::Fill() {
  while (bits_ <= 56) {
    uint8_t byte = 0;
    bool real = false;
    if (!hit_marker_ && pos_ < data_.size()) {
      const uint8_t b = data_[pos_];
      if (b != 0xFF) {
        byte = b;
        real = true;
        ++pos_;
      } else if (pos_ + 1 < data_.size() && data_[pos_ + 1] == 0x00) {
        byte = 0xFF;
        real = true;
        pos_ += 2;
      } else {
        // A marker (or a dangling 0xFF at the end); leave pos_ on it.
        hit_marker_ = true;
      }
    }
    buffer_ |= static_cast<uint64_t>(byte) << (56 - bits_);
    bits_ += 8;
    if (real) real_bits_ += 8;
  }
}

void BitReader::Skip(int n) {
  if (bits_ < n) Fill();
  if (real_bits_ < n) {
    throw Error(ErrorCode::kBitstreamExhausted,
                "entropy data ended at byte " + std::to_string(pos_));
  }
  buffer_ <<= n;
  bits_ -= n;
  real_bits_ -= n;
}

void BitReader::ReadRestartMarker(int expected_index) {
  buffer_ = 0;
  bits_ = 0;
  real_bits_ = 0;
  hit_marker_ = false;
  // Skip padding and fill bytes up to the marker.
  while (pos_ < data_.size() && data_[pos_] != 0xFF) ++pos_;
  while (pos_ + 1 < data_.size() && data_[pos_] == 0xFF && data_[pos_ + 1] == 0xFF) ++pos_;
  if (pos_ + 1 >= data_.size()) {
    throw Error(ErrorCode::kBadRestartMarker, "missing RST marker");
  }
  const uint8_t marker = data_[pos_ + 1];
  if (marker != 0xD0 + (expected_index & 7)) {
    throw Error(ErrorCode::kBadRestartMarker,
                "expected RST" + std::to_string(expected_index & 7) +
                    ", found marker 0x" + std::to_string(marker));
  }
  pos_ += 2;
}

HuffmanDecoder HuffmanDecoder::Build(const HuffTable& table) {
  HuffmanDecoder dec;
  dec.codes_ = GenerateCanonicalCodes(table);
  dec.symbols_ = table.huffval;
  dec.max_code_.fill(-1);
  size_t k = 0;
  for (int len = 1; len <= 16; ++len) {
    const int count = table.bits[len - 1];
    if (count == 0) continue;
    dec.val_offset_[len] = static_cast<int32_t>(k) - dec.codes_[k].code;
    k += count;
    dec.max_code_[len] = dec.codes_[k - 1].code;
  }
  dec.lookahead_.assign(1u << kLookaheadBits, 0);
  for (size_t i = 0; i < dec.codes_.size(); ++i) {
    const HuffmanCode& c = dec.codes_[i];
    if (c.length > kLookaheadBits) break;
    const int shift = kLookaheadBits - c.length;
    const uint32_t first = static_cast<uint32_t>(c.code) << shift;
    for (uint32_t j = 0; j < (1u << shift); ++j) {
      dec.lookahead_[first + j] =
          static_cast<uint16_t>((c.length << 8) | dec.symbols_[i]);
    }
  }
  return dec;
}

uint8_t HuffmanDecoder::Decode(BitReader& reader) const {
  const uint32_t peek = reader.Peek(16);
  const uint16_t entry = lookahead_[peek >> (16 - kLookaheadBits)];
  if (entry != 0) {
    reader.Skip(entry >> 8);
    return static_cast<uint8_t>(entry & 0xFF);
  }
  for (int len = kLookaheadBits + 1; len <= 16; ++len) {
    const int32_t code = static_cast<int32_t>(peek >> (16 - len));
    if (code <= max_code_[len]) {
      reader.Skip(len);
      return symbols_[val_offset_[len] + code];
    }
  }
  throw Error(ErrorCode::kInvalidHuffmanCode,
              "no code matches bits near byte " + std::to_string(reader.position()));
}

HuffmanEncoder HuffmanEncoder::Build(const HuffTable& table) {
  HuffmanEncoder enc;
  const std::vector<HuffmanCode> codes = GenerateCanonicalCodes(table);
  for (size_t i = 0; i < codes.size(); ++i) enc.codes_[table.huffval[i]] = codes[i];
  return enc;
}

void BitWriter::EmitByte(uint8_t b) {
  out_.push_back(b);
  if (b == 0xFF) out_.push_back(0x00);
}

void BitWriter::Write(uint32_t bits, int count) {
  if (count == 0) return;
  accum_ = (accum_ << count) | (bits & ((1u << count) - 1));
  count_ += count;
  while (count_ >= 8) {
    count_ -= 8;
    EmitByte(static_cast<uint8_t>(accum_ >> count_));
  }
}

void BitWriter::Flush() {
  if (count_ > 0) Write((1u << (8 - count_)) - 1, 8 - count_);
}

void BitWriter::WriteRestartMarker(int index) {
  Flush();
  out_.push_back(0xFF);
  out_.push_back(static_cast<uint8_t>(0xD0 + (index & 7)));
}

}  // namespace dctcomp::jpeg
