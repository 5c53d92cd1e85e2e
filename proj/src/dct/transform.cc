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

#include "dctcomp/dct/transform.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dctcomp::dct {

namespace {

// basis[u][x] = C(u)/2 * cos((2x+1) u pi / 16); the 1-D orthonormal DCT-II.
struct Basis {
  std::array<std::array<double, 8>, 8> m{};
  Basis() {
    for (int u = 0; u < 8; ++u) {
      const double cu = u == 0 ? std::numbers::sqrt2 / 2 : 1.0;
      for (int x = 0; x < 8; ++x) {
        m[u][x] = 0.5 * cu * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
      }
    }
  }
};

const Basis& GetBasis() {
  static const Basis basis;
  return basis;
}

}  // namespace

Block8x8 FdctBlock(const Block8x8& samples) {
  const auto& b = GetBasis().m;
  Block8x8 tmp{};
  // Rows: tmp[y][u] = sum_x b[u][x] s[y][x].
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double acc = 0;
      for (int x = 0; x < 8; ++x) acc += b[u][x] * samples[y * 8 + x];
      tmp[y * 8 + u] = acc;
    }
  }
  Block8x8 out{};
  for (int v = 0; v < 8; ++v) {
    for (int u = 0; u < 8; ++u) {
      double acc = 0;
      for (int y = 0; y < 8; ++y) acc += b[v][y] * tmp[y * 8 + u];
      out[v * 8 + u] = acc;
    }
  }
  return out;
}

Block8x8 IdctBlock(const Block8x8& coefficients) {
  const auto& b = GetBasis().m;
  Block8x8 tmp{};
  // Columns first: tmp[y][u] = sum_v b[v][y] S[v][u].
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double acc = 0;
      for (int v = 0; v < 8; ++v) acc += b[v][y] * coefficients[v * 8 + u];
      tmp[y * 8 + u] = acc;
    }
  }
  Block8x8 out{};
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      double acc = 0;
      for (int u = 0; u < 8; ++u) acc += b[u][x] * tmp[y * 8 + u];
      out[y * 8 + x] = acc;
    }
  }
  return out;
}

AanMultipliers MakeAanMultipliers(const jpeg::QuantTable& table) {
  static constexpr double kScale[8] = {1.0,         1.387039845, 1.306562965, 1.175875602,
                                       1.0,         0.785694958, 0.541196100, 0.275899379};
  AanMultipliers m{};
  for (int k = 0; k < 64; ++k) {
    const int n = jpeg::kZigzagToNatural[k];
    m[n] = static_cast<float>(table.steps[k] * kScale[n / 8] * kScale[n % 8] * 0.125);
  }
  return m;
}

void FastIdctBlock(const jpeg::CoefficientBlock& levels, const AanMultipliers& mult,
                   std::array<uint8_t, 64>& out) {
  constexpr float kC4x2 = 1.414213562f;
  constexpr float kC2x2 = 1.847759065f;
  constexpr float kC2MinusC6x2 = 1.082392200f;
  constexpr float kC2PlusC6x2 = 2.613125930f;
  float ws[64];

  // Columns.
  for (int c = 0; c < 8; ++c) {
    const int32_t* in = &levels[c];
    const float* q = &mult[c];
    float* w = &ws[c];
    if (!in[8] && !in[16] && !in[24] && !in[32] && !in[40] && !in[48] && !in[56]) {
      const float dc = static_cast<float>(in[0]) * q[0];
      for (int r = 0; r < 8; ++r) w[8 * r] = dc;
      continue;
    }
    float tmp0 = static_cast<float>(in[0]) * q[0];
    float tmp1 = static_cast<float>(in[16]) * q[16];
    float tmp2 = static_cast<float>(in[32]) * q[32];
    float tmp3 = static_cast<float>(in[48]) * q[48];

    float tmp10 = tmp0 + tmp2;
    float tmp11 = tmp0 - tmp2;
    float tmp13 = tmp1 + tmp3;
    float tmp12 = (tmp1 - tmp3) * kC4x2 - tmp13;
    tmp0 = tmp10 + tmp13;
    tmp3 = tmp10 - tmp13;
    tmp1 = tmp11 + tmp12;
    tmp2 = tmp11 - tmp12;

    float tmp4 = static_cast<float>(in[8]) * q[8];
    float tmp5 = static_cast<float>(in[24]) * q[24];
    float tmp6 = static_cast<float>(in[40]) * q[40];
    float tmp7 = static_cast<float>(in[56]) * q[56];

    const float z13 = tmp6 + tmp5;
    const float z10 = tmp6 - tmp5;
    const float z11 = tmp4 + tmp7;
    const float z12 = tmp4 - tmp7;
    tmp7 = z11 + z13;
    tmp11 = (z11 - z13) * kC4x2;
    const float z5 = (z10 + z12) * kC2x2;
    tmp10 = z5 - z12 * kC2MinusC6x2;
    tmp12 = z5 - z10 * kC2PlusC6x2;
    tmp6 = tmp12 - tmp7;
    tmp5 = tmp11 - tmp6;
    tmp4 = tmp10 - tmp5;

    w[0] = tmp0 + tmp7;
    w[56] = tmp0 - tmp7;
    w[8] = tmp1 + tmp6;
    w[48] = tmp1 - tmp6;
    w[16] = tmp2 + tmp5;
    w[40] = tmp2 - tmp5;
    w[24] = tmp3 + tmp4;
    w[32] = tmp3 - tmp4;
  }

  // Rows.
  auto emit = [](float v) {
    const long r = std::lrint(v);
    return static_cast<uint8_t>(std::clamp(r, -128L, 127L) + 128);
  };
  for (int r = 0; r < 8; ++r) {
    const float* w = &ws[8 * r];
    uint8_t* o = &out[8 * r];
    float tmp10 = w[0] + w[4];
    float tmp11 = w[0] - w[4];
    const float tmp13 = w[2] + w[6];
    float tmp12 = (w[2] - w[6]) * kC4x2 - tmp13;
    const float tmp0 = tmp10 + tmp13;
    const float tmp3 = tmp10 - tmp13;
    const float tmp1 = tmp11 + tmp12;
    const float tmp2 = tmp11 - tmp12;

    const float z13 = w[5] + w[3];
    const float z10 = w[5] - w[3];
    const float z11 = w[1] + w[7];
    const float z12 = w[1] - w[7];
    const float tmp7 = z11 + z13;
    tmp11 = (z11 - z13) * kC4x2;
    const float z5 = (z10 + z12) * kC2x2;
    tmp10 = z5 - z12 * kC2MinusC6x2;
    tmp12 = z5 - z10 * kC2PlusC6x2;
    const float tmp6 = tmp12 - tmp7;
    const float tmp5 = tmp11 - tmp6;
    const float tmp4 = tmp10 - tmp5;

    o[0] = emit(tmp0 + tmp7);
    o[7] = emit(tmp0 - tmp7);
    o[1] = emit(tmp1 + tmp6);
    o[6] = emit(tmp1 - tmp6);
    o[2] = emit(tmp2 + tmp5);
    o[5] = emit(tmp2 - tmp5);
    o[3] = emit(tmp3 + tmp4);
    o[4] = emit(tmp3 - tmp4);
  }
}

}  // namespace dctcomp::dct
