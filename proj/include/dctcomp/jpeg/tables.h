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

// Constant tables from ITU-T T.81 Annex K, plus the zigzag scan order.

#ifndef DCTCOMP_JPEG_TABLES_H_
#define DCTCOMP_JPEG_TABLES_H_

#include <array>
#include <cstdint>
#include <vector>

#include "dctcomp/jpeg/types.h"

namespace dctcomp::jpeg {

// kZigzagToNatural[k] is the row-major index of the k-th zigzag coefficient.
inline constexpr std::array<uint8_t, kBlockSize> kZigzagToNatural = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

// Table K.1 / K.2, natural order.
extern const std::array<uint16_t, kBlockSize> kStdLuminanceQuant;
extern const std::array<uint16_t, kBlockSize> kStdChrominanceQuant;

// Table K.3 - K.6.
HuffTable StdDcLuminance();
HuffTable StdDcChrominance();
HuffTable StdAcLuminance();
HuffTable StdAcChrominance();

// IJG linear quality mapping of a natural-order base table; quality in
// [1, 100]. Result is in zigzag order with steps clamped to [1, 255].
QuantTable ScaledQuantTable(const std::array<uint16_t, kBlockSize>& base,
                            int quality, int id);

// {luminance (id 0), chrominance (id 1)} at the given quality.
std::vector<QuantTable> StandardQuantTables(int quality);
// Two all-ones tables, ids 0 and 1.
std::vector<QuantTable> UnitQuantTables();

}  // namespace dctcomp::jpeg

#endif  // DCTCOMP_JPEG_TABLES_H_
