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

#ifndef DCTCOMP_JPEG_HUFFMAN_H_
#define DCTCOMP_JPEG_HUFFMAN_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dctcomp/jpeg/types.h"

namespace dctcomp::jpeg {

struct HuffmanCode {
  uint16_t code = 0;
  uint8_t length = 0;  // 0 means the symbol is not in the table.
};

// Canonical code assignment: ascending by length, then by position in
// huffval. Entry i belongs to huffval[i]. Throws kOverfullCodeSpace when a
// length has more codes than the remaining code space allows.
std::vector<HuffmanCode> GenerateCanonicalCodes(const HuffTable& table);

// Reads entropy coded bits MSB first, removing 0xFF00 stuffing. Loading
// stops at the first marker; beyond it the reader supplies zero bits that
// may be peeked but never consumed.
class BitReader {
 public:
  explicit BitReader(std::span<const uint8_t> data) : data_(data) {}

  // Returns the next `n` (<= 16) bits without consuming them.
  uint32_t Peek(int n) {
    if (bits_ < n) Fill();
    return static_cast<uint32_t>(buffer_ >> (64 - n));
  }
  // Throws kBitstreamExhausted when fewer than `n` real bits remain.
  void Skip(int n);
  uint32_t ReadBits(int n) {
    if (n == 0) return 0;
    const uint32_t v = Peek(n);
    Skip(n);
    return v;
  }

  // Consumes the RSTn marker expected after a restart interval, discarding
  // any padding bits. Throws kBadRestartMarker on mismatch.
  void ReadRestartMarker(int expected_index);

  // Bytes of `data` consumed so far (including buffered ones).
  size_t position() const { return pos_; }

 private:
  void Fill();

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
  uint64_t buffer_ = 0;  // left aligned
  int bits_ = 0;
  int real_bits_ = 0;
  bool hit_marker_ = false;
};

// Maps canonical codes back to symbols. A 9-bit lookahead table serves short
// codes; longer codes fall back to per-length ranges.
class HuffmanDecoder {
 public:
  static HuffmanDecoder Build(const HuffTable& table);

  // Throws kInvalidHuffmanCode if no code matches.
  uint8_t Decode(BitReader& reader) const;

  const std::vector<HuffmanCode>& codes() const { return codes_; }
  const std::vector<uint8_t>& symbols() const { return symbols_; }

 private:
  static constexpr int kLookaheadBits = 9;

  std::vector<HuffmanCode> codes_;
  std::vector<uint8_t> symbols_;
  // Per code length: largest code (-1 if none) and offset into symbols_.
  std::array<int32_t, 17> max_code_{};
  std::array<int32_t, 17> val_offset_{};
  // (length << 8) | symbol, 0 when the prefix needs the slow path.
  std::vector<uint16_t> lookahead_;
};

// Symbol -> code for entropy encoding.
class HuffmanEncoder {
 public:
  static HuffmanEncoder Build(const HuffTable& table);

  const HuffmanCode& CodeFor(uint8_t symbol) const { return codes_[symbol]; }

 private:
  std::array<HuffmanCode, 256> codes_{};
};

// MSB-first bit sink with 0xFF byte stuffing.
class BitWriter {
 public:
  explicit BitWriter(std::vector<uint8_t>& out) : out_(out) {}

  // count <= 24.
  void Write(uint32_t bits, int count);
  // Pads the final partial byte with one bits.
  void Flush();
  // Flush followed by an RSTn marker.
  void WriteRestartMarker(int index);

 private:
  void EmitByte(uint8_t b);

  std::vector<uint8_t>& out_;
  uint64_t accum_ = 0;
  int count_ = 0;
};

}  // namespace dctcomp::jpeg

#endif  // DCTCOMP_JPEG_HUFFMAN_H_
