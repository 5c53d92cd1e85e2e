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
#include <cmath>
#include <numeric>
#include <random>

#include "dctcomp/dct/full_decode.h"
#include "dctcomp/dct/planes.h"
#include "dctcomp/dct/transform.h"
#include "dctcomp/image.h"
#include "dctcomp/jpeg/codec.h"
#include "dctcomp/jpeg/tables.h"
#include "gtest/gtest.h"
#include "reference_decoder.h"
#include "test_util.h"

namespace dctcomp::dct {
namespace {

using testing::ThrownCode;

CoefficientPlane MakePlane(int w, int h, std::vector<double> values) {
  CoefficientPlane p;
  p.width = w;
  p.height = h;
  p.values = std::move(values);
  return p;
}

CoefficientPlane RandomPlane(std::mt19937_64& rng, int w, int h) {
  std::uniform_real_distribution<double> d(-1024, 1024);
  std::vector<double> v(static_cast<size_t>(w) * h);
  for (double& x : v) x = std::round(d(rng) * 8) / 8;
  return MakePlane(w, h, v);
}

jpeg::CoefficientGrid RandomGrid(std::mt19937_64& rng, int bw, int bh) {
  jpeg::CoefficientGrid g;
  g.component_id = 1;
  g.blocks_wide = bw;
  g.blocks_high = bh;
  g.blocks.resize(static_cast<size_t>(bw) * bh);
  std::uniform_int_distribution<int32_t> d(-200, 200);
  for (auto& b : g.blocks) {
    for (auto& v : b) v = d(rng);
  }
  return g;
}

TEST(DequantizeTest, MultipliesByNaturalOrderStep) {
  jpeg::CoefficientGrid g;
  g.blocks_wide = g.blocks_high = 1;
  g.blocks.resize(1);
  g.blocks[0].fill(0);
  g.blocks[0][0] = 16;
  g.blocks[0][8] = 1;  // (u=0, v=1) is zigzag index 2
  jpeg::QuantTable t = jpeg::QuantTable::Unit(0);
  t.steps[0] = 16;
  t.steps[2] = 7;
  const auto out = Dequantize(g, t);
  EXPECT_EQ(out.blocks[0][0], 256);
  EXPECT_EQ(out.blocks[0][8], 7);
  EXPECT_EQ(out.blocks[0][1], 0);
}

TEST(DequantizeTest, ZeroBlockAndUnitTable) {
  std::mt19937_64 rng(1);
  jpeg::CoefficientGrid zero;
  zero.blocks_wide = zero.blocks_high = 1;
  zero.blocks.resize(1);
  zero.blocks[0].fill(0);
  const auto std_tables = jpeg::StandardQuantTables(20);
  EXPECT_EQ(Dequantize(zero, std_tables[0]).blocks, zero.blocks);
  const auto g = RandomGrid(rng, 3, 2);
  EXPECT_EQ(Dequantize(g, jpeg::QuantTable::Unit(0)).blocks, g.blocks);
}

TEST(DequantizeTest, TableMismatch) {
  jpeg::CoefficientGrid g;
  g.quant_table_id = 1;
  EXPECT_EQ(ThrownCode([&] { Dequantize(g, jpeg::QuantTable::Unit(0)); }), "TableMismatch");
}

TEST(ZigzagTest, FirstPositions) {
  std::vector<int> seq(64);
  std::iota(seq.begin(), seq.end(), 0);
  const auto block = ZigzagToNatural<int>(seq);
  // block[row * 8 + col]
  EXPECT_EQ(block[0], 0);
  EXPECT_EQ(block[1], 1);  // (row 0, col 1)
  EXPECT_EQ(block[8], 2);  // (row 1, col 0)
  EXPECT_EQ(block[63], 63);
  EXPECT_EQ(ThrownCode([&] { ZigzagToNatural<int>(std::vector<int>(63)); }), "WrongLength");
  EXPECT_EQ(ThrownCode([&] { NaturalToZigzag<int>(std::vector<int>(65)); }), "WrongLength");
}

TEST(ZigzagTest, RoundTripAndPermutation) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> s(64);
    for (int& v : s) v = static_cast<int>(rng() % 2048) - 1024;
    const auto nat = ZigzagToNatural<int>(s);
    const auto back = NaturalToZigzag<int>(nat);
    EXPECT_TRUE(std::equal(s.begin(), s.end(), back.begin()));
  }
  std::array<bool, 64> seen{};
  for (int k : jpeg::kZigzagToNatural) seen[k] = true;
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
}

TEST(AssemblePlaneTest, SingleBlockAndLayout) {
  std::mt19937_64 rng(3);
  const auto one = RandomGrid(rng, 1, 1);
  const auto p1 = AssemblePlane(one, 8, 8);
  ASSERT_EQ(p1.width, 8);
  ASSERT_EQ(p1.height, 8);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(p1.values[i], one.blocks[0][i]);

  const auto two = RandomGrid(rng, 2, 1);
  const auto p2 = AssemblePlane(two, 16, 8);
  ASSERT_EQ(p2.width, 16);
  ASSERT_EQ(p2.height, 8);
  for (int v = 0; v < 8; ++v) {
    for (int u = 0; u < 8; ++u) {
      EXPECT_EQ(p2.At(u, v), two.blocks[0][v * 8 + u]);
      EXPECT_EQ(p2.At(8 + u, v), two.blocks[1][v * 8 + u]);
    }
  }
}

TEST(AssemblePlaneTest, CropsToWholeBlocks) {
  std::mt19937_64 rng(4);
  const auto g = RandomGrid(rng, 4, 4);
  const auto p = AssemblePlane(g, 17, 9);
  EXPECT_EQ(p.width, 24);
  EXPECT_EQ(p.height, 16);
  EXPECT_EQ(ThrownCode([&] { AssemblePlane(g, 33, 8); }), "CropExceedsGrid");
  EXPECT_EQ(ThrownCode([&] { AssemblePlane(g, 0, 8); }), "CropExceedsGrid");
}

TEST(AssemblePlaneTest, PreservesCoefficientMultiset) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int bw = 1 + trial % 5, bh = 1 + trial % 3;
    const auto g = RandomGrid(rng, bw, bh);
    const auto p = AssemblePlane(g, bw * 8, bh * 8);
    std::vector<double> a = p.values, b;
    for (const auto& blk : g.blocks) b.insert(b.end(), blk.begin(), blk.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
  }
}

TEST(AssemblePlaneTest, CifarSizedLumaPlane) {
  std::mt19937_64 rng(6);
  const RgbImage img = testing::RandomImage(rng, 32, 32);
  const auto planes = RgbToYcbcrPlanes(img, jpeg::Subsampling::k420);
  const auto parsed = jpeg::ParseJpeg(
      jpeg::EncodeJpeg(planes, jpeg::StandardQuantTables(75), {jpeg::Subsampling::k420}));
  const auto grids = jpeg::DecodeCoefficients(parsed);
  EXPECT_EQ(grids[0].blocks_wide, 4);
  EXPECT_EQ(grids[0].blocks_high, 4);
  const auto y = AssemblePlane(grids[0], parsed.frame.ComponentWidth(0), parsed.frame.ComponentHeight(0));
  EXPECT_EQ(y.width, 32);
  EXPECT_EQ(y.height, 32);
  const auto cb = AssemblePlane(grids[1], parsed.frame.ComponentWidth(1), parsed.frame.ComponentHeight(1));
  EXPECT_EQ(cb.width, 16);
  EXPECT_EQ(cb.height, 16);
}

TEST(ResampleTest, Examples) {
  const auto c = MakePlane(6, 4, std::vector<double>(24, 3.25));
  const auto half = DownsamplePlane(c);
  EXPECT_EQ(half.width, 3);
  EXPECT_EQ(half.height, 2);
  for (double v : half.values) EXPECT_EQ(v, 3.25);

  const auto small = DownsamplePlane(MakePlane(2, 2, {1, 3, 5, 7}));
  ASSERT_EQ(small.values.size(), 1u);
  EXPECT_EQ(small.values[0], 4);

  const auto up = UpsamplePlane(MakePlane(1, 1, {4}));
  EXPECT_EQ(up.width, 2);
  EXPECT_EQ(up.values, std::vector<double>(4, 4.0));

  EXPECT_EQ(ThrownCode([&] { DownsamplePlane(MakePlane(3, 2, std::vector<double>(6))); }),
            "OddDimensions");
  EXPECT_EQ(ThrownCode([&] { DownsamplePlane(MakePlane(2, 5, std::vector<double>(10))); }),
            "OddDimensions");
}

TEST(ResampleTest, DownsampleOfUpsampleIsIdentity) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = RandomPlane(rng, 1 + trial % 9, 1 + trial % 7);
    EXPECT_EQ(DownsamplePlane(UpsamplePlane(p)).values, p.values);
  }
}

TEST(AssembleInputTest, Shapes224) {
  std::mt19937_64 rng(8);
  const auto y = RandomPlane(rng, 224, 224);
  const auto cb = RandomPlane(rng, 112, 112);
  const auto cr = RandomPlane(rng, 112, 112);
  const auto down = AssembleInput(y, cb, cr, Resample::kDownsample, Variant::kQuantized);
  EXPECT_EQ(down.height, 112);
  EXPECT_EQ(down.width, 112);
  EXPECT_EQ(DownsamplePlane(y).width, 112);
  const auto up = AssembleInput(y, cb, cr, Resample::kUpsample, Variant::kQuantized);
  EXPECT_EQ(up.height, 224);
  EXPECT_EQ(up.width, 224);
  EXPECT_EQ(UpsamplePlane(cb).width, 224);
  EXPECT_EQ(down.values.size() * 4, up.values.size());

  // Channel order (Y, Cb, Cr) and values.
  EXPECT_FLOAT_EQ(up.values[0], static_cast<float>(y.At(0, 0)));
  EXPECT_FLOAT_EQ(up.values[1], static_cast<float>(cb.At(0, 0)));
  EXPECT_FLOAT_EQ(up.values[2], static_cast<float>(cr.At(0, 0)));
  const size_t px = static_cast<size_t>(3) * 224 + 5;  // (x=5, y=3) reads chroma (2, 1)
  EXPECT_FLOAT_EQ(up.values[px * 3 + 2], static_cast<float>(cr.At(2, 1)));
  const double mean = (y.At(0, 0) + y.At(1, 0) + y.At(0, 1) + y.At(1, 1)) / 4;
  EXPECT_NEAR(down.values[0], mean, 1e-3);
}

TEST(AssembleInputTest, EqualSizesIgnoreMode) {
  std::mt19937_64 rng(9);
  const auto y = RandomPlane(rng, 32, 32);
  const auto cb = RandomPlane(rng, 32, 32);
  const auto cr = RandomPlane(rng, 32, 32);
  const auto a = AssembleInput(y, cb, cr, Resample::kDownsample, Variant::kQuantized);
  const auto b = AssembleInput(y, cb, cr, Resample::kUpsample, Variant::kQuantized);
  EXPECT_EQ(a.height, 32);
  EXPECT_EQ(a.values, b.values);
}

TEST(AssembleInputTest, InconsistentGeometry) {
  std::mt19937_64 rng(10);
  const auto y = RandomPlane(rng, 32, 32);
  const auto c16 = RandomPlane(rng, 16, 16);
  const auto c8 = RandomPlane(rng, 8, 8);
  EXPECT_EQ(ThrownCode([&] { AssembleInput(y, c8, c8, Resample::kUpsample, Variant::kQuantized); }),
            "InconsistentGeometry");
  EXPECT_EQ(
      ThrownCode([&] { AssembleInput(y, c16, c8, Resample::kUpsample, Variant::kQuantized); }),
      "InconsistentGeometry");
}

TEST(BuildInputTensorTest, DequantizeOrderAgreesOnUpsample) {
  // Replication commutes with the element-wise product, so both orders match.
  std::mt19937_64 rng(11);
  const RgbImage img = testing::RandomImage(rng, 48, 32);
  const auto bytes = jpeg::EncodeJpeg(RgbToYcbcrPlanes(img, jpeg::Subsampling::k420),
                                      jpeg::StandardQuantTables(50), {jpeg::Subsampling::k420});
  const auto parsed = jpeg::ParseJpeg(bytes);
  TensorOptions before;
  TensorOptions after;
  after.dequantize_after_resample = true;
  EXPECT_EQ(BuildInputTensor(parsed, before).values, BuildInputTensor(parsed, after).values);

  before.resample = after.resample = Resample::kDownsample;
  const auto a = BuildInputTensor(parsed, before);
  const auto b = BuildInputTensor(parsed, after);
  ASSERT_EQ(a.values.size(), b.values.size());
  EXPECT_NE(a.values, b.values);
  // Chroma channels are untouched by downsampling.
  for (size_t i = 0; i < a.values.size(); i += 3) {
    EXPECT_EQ(a.values[i + 1], b.values[i + 1]);
    EXPECT_EQ(a.values[i + 2], b.values[i + 2]);
  }
}

TEST(BuildInputTensorTest, OddSizedFramesStillAssemble) {
  std::mt19937_64 rng(12);
  const RgbImage img = testing::RandomImage(rng, 33, 17);
  const auto parsed = jpeg::ParseJpeg(jpeg::EncodeJpeg(
      RgbToYcbcrPlanes(img, jpeg::Subsampling::k420), jpeg::StandardQuantTables(75),
      {jpeg::Subsampling::k420}));
  const auto up = BuildInputTensor(parsed, {});
  EXPECT_EQ(up.width, 48);
  EXPECT_EQ(up.height, 32);
  TensorOptions down;
  down.resample = Resample::kDownsample;
  EXPECT_EQ(BuildInputTensor(parsed, down).width, 24);
}

TEST(BuildInputTensorTest, UnquantizedMatchesDequantizedUnitTables) {
  std::mt19937_64 rng(13);
  const RgbImage img = testing::RandomImage(rng, 32, 32);
  const auto parsed = jpeg::ParseJpeg(jpeg::EncodeJpeg(
      RgbToYcbcrPlanes(img, jpeg::Subsampling::k420), jpeg::UnitQuantTables(),
      {jpeg::Subsampling::k420}));
  TensorOptions raw;
  raw.dequantize = false;
  EXPECT_EQ(BuildInputTensor(parsed, raw).values, BuildInputTensor(parsed, {}).values);
}

TEST(TransformTest, ConstantBlock) {
  Block8x8 x;
  x.fill(13.5);
  const Block8x8 s = FdctBlock(x);
  EXPECT_NEAR(s[0], 8 * 13.5, 1e-12);
  for (int i = 1; i < 64; ++i) EXPECT_NEAR(s[i], 0.0, 1e-12) << i;
}

TEST(TransformTest, InverseAndEnergy) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> d(-128, 127);
  for (int trial = 0; trial < 200; ++trial) {
    Block8x8 x;
    for (double& v : x) v = d(rng);
    const Block8x8 s = FdctBlock(x);
    const Block8x8 back = IdctBlock(s);
    double ex = 0, es = 0;
    for (int i = 0; i < 64; ++i) {
      ASSERT_NEAR(back[i], x[i], 1e-10);
      ex += x[i] * x[i];
      es += s[i] * s[i];
    }
    EXPECT_NEAR(ex, es, 1e-9 * std::max(1.0, ex));
  }
}

// Direct quadruple-sum definition as an independent oracle.
TEST(TransformTest, MatchesDefinition) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> d(-128, 127);
  Block8x8 x;
  for (double& v : x) v = d(rng);
  const Block8x8 s = FdctBlock(x);
  const double pi = std::acos(-1.0);
  for (int v = 0; v < 8; ++v) {
    for (int u = 0; u < 8; ++u) {
      double sum = 0;
      for (int yy = 0; yy < 8; ++yy) {
        for (int xx = 0; xx < 8; ++xx) {
          sum += x[yy * 8 + xx] * std::cos((2 * xx + 1) * u * pi / 16) *
                 std::cos((2 * yy + 1) * v * pi / 16);
        }
      }
      const double cu = u ? 1 : 1 / std::sqrt(2.0), cv = v ? 1 : 1 / std::sqrt(2.0);
      EXPECT_NEAR(s[v * 8 + u], 0.25 * cu * cv * sum, 1e-9);
    }
  }
}

TEST(FullDecodeTest, NeutralGray) {
  std::vector<jpeg::PixelPlane> planes = {testing::ConstantPlane(16, 16, 128),
                                         testing::ConstantPlane(8, 8, 128),
                                         testing::ConstantPlane(8, 8, 128)};
  const auto img = FullDecode(jpeg::ParseJpeg(
      jpeg::EncodeJpeg(planes, jpeg::StandardQuantTables(75), {jpeg::Subsampling::k420})));
  for (uint8_t v : img.pixels) EXPECT_EQ(v, 128);
}

TEST(FullDecodeTest, CorpusMatchesReferenceWithinOne) {
  for (const auto& path : testing::ConformanceFiles()) {
    SCOPED_TRACE(path.filename().string());
    const auto bytes = testing::ReadBytes(path);
    const auto ref = testing::ReferenceDecodePixels(bytes);
    const RgbImage ours = FullDecode(jpeg::ParseJpeg(bytes));
    ASSERT_EQ(ours.width, ref.width);
    ASSERT_EQ(ours.height, ref.height);
    int worst = 0;
    for (int y = 0; y < ref.height; ++y) {
      for (int x = 0; x < ref.width; ++x) {
        for (int c = 0; c < 3; ++c) {
          const int theirs = ref.samples[(static_cast<size_t>(y) * ref.width + x) * ref.channels +
                                         (ref.channels == 1 ? 0 : c)];
          worst = std::max(worst, std::abs(ours.At(x, y)[c] - theirs));
        }
      }
    }
    EXPECT_LE(worst, 1);
  }
}

// With unit tables the only loss is coefficient rounding, so each
// reconstructed component sample lands within 2 of the encoder input.
// Compared on component samples: the 8-bit RGB <-> YCbCr round trip is lossy
// on its own.
TEST(FullDecodeTest, UnitTableRoundTripWithinTwo) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const RgbImage img = testing::RandomImage(rng, 8 + trial % 41, 8 + (trial * 7) % 33);
    const auto sub = trial % 2 ? jpeg::Subsampling::k420 : jpeg::Subsampling::k444;
    const auto planes = RgbToYcbcrPlanes(img, sub);
    const auto parsed = jpeg::ParseJpeg(jpeg::EncodeJpeg(planes, jpeg::UnitQuantTables(), {sub}));
    const auto grids = jpeg::DecodeCoefficients(parsed);
    int worst = 0;
    for (size_t c = 0; c < 3; ++c) {
      const auto rec = ReconstructComponent(grids[c], parsed.QuantTableFor(c));
      for (int y = 0; y < planes[c].height; ++y) {
        for (int x = 0; x < planes[c].width; ++x) {
          worst = std::max(worst, std::abs(rec.At(x, y) - planes[c].At(x, y)));
        }
      }
    }
    EXPECT_LE(worst, 2) << "trial " << trial;
  }
}

TEST(FullDecodeTest, FastIdctTracksExactTransform) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int32_t> d(-60, 60);
  const auto tables = jpeg::StandardQuantTables(50);
  const AanMultipliers mult = MakeAanMultipliers(tables[0]);
  std::array<int32_t, 64> steps{};
  for (int k = 0; k < 64; ++k) steps[jpeg::kZigzagToNatural[k]] = tables[0].steps[k];
  for (int trial = 0; trial < 500; ++trial) {
    jpeg::CoefficientBlock levels{};
    for (int i = 0; i < 64; ++i) levels[i] = i < 20 ? d(rng) / (1 + i) : 0;
    std::array<uint8_t, 64> fast;
    FastIdctBlock(levels, mult, fast);
    Block8x8 coef;
    for (int i = 0; i < 64; ++i) coef[i] = static_cast<double>(levels[i]) * steps[i];
    const Block8x8 exact = IdctBlock(coef);
    for (int i = 0; i < 64; ++i) {
      const double want = std::clamp(exact[i] + 128.0, 0.0, 255.0);
      ASSERT_LE(std::abs(fast[i] - want), 0.5 + 1e-3) << "trial " << trial << " index " << i;
    }
  }
}

}  // namespace
}  // namespace dctcomp::dct
