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

// Coefficient grids to network input: de-quantization, spatial block layout,
// luma/chroma size matching and channel concatenation.

#ifndef DCTCOMP_DCT_PLANES_H_
#define DCTCOMP_DCT_PLANES_H_

#include <string>
#include <vector>

#include "dctcomp/jpeg/types.h"

namespace dctcomp::dct {

// Coefficient (u, v) of block (bx, by) sits at row 8*by + v, column 8*bx + u.
struct CoefficientPlane {
  int component_id = 0;
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double At(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }
  double& At(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }
};

enum class Resample { kDownsample, kUpsample };
enum class Variant { kQuantized, kUnquantized };

std::string ResampleName(Resample r);
std::string VariantName(Variant v);
Resample ParseResample(const std::string& s);
Variant ParseVariant(const std::string& s);

// H x W x 3 (Y, Cb, Cr), channel-interleaved.
struct InputTensor {
  static constexpr int kChannels = 3;
  int height = 0;
  int width = 0;
  std::vector<float> values;
  Variant variant = Variant::kQuantized;
  Resample resample = Resample::kUpsample;
};

// Multiplies each coefficient by its quantizer step. kTableMismatch when the
// table slot differs from the grid's declared table.
jpeg::CoefficientGrid Dequantize(const jpeg::CoefficientGrid& grid, const jpeg::QuantTable& table);

// Lays blocks out spatially and crops to whole blocks covering the true
// component size. kCropExceedsGrid if that exceeds the grid.
CoefficientPlane AssemblePlane(const jpeg::CoefficientGrid& grid, int true_width,
                               int true_height);

// Same layout as AssemblePlane but holding the quantizer step of every
// position; used to de-quantize after resampling.
CoefficientPlane StepPlane(const jpeg::QuantTable& table, int width, int height);

// 2x2 mean. kOddDimensions unless both sides are even.
CoefficientPlane DownsamplePlane(const CoefficientPlane& plane);
// 2x2 nearest-neighbour replication.
CoefficientPlane UpsamplePlane(const CoefficientPlane& plane);

// Element-wise product; kInconsistentGeometry on size mismatch.
CoefficientPlane MultiplyPlanes(const CoefficientPlane& a, const CoefficientPlane& b);

// Concatenates (Y, Cb, Cr). Y twice the chroma size is resolved by `mode`;
// equal sizes pass through unchanged. Anything else is kInconsistentGeometry.
InputTensor AssembleInput(const CoefficientPlane& y, const CoefficientPlane& cb,
                          const CoefficientPlane& cr, Resample mode, Variant variant);

struct TensorOptions {
  Resample resample = Resample::kUpsample;
  bool dequantize = true;
  // De-quantize after resampling using a resampled step plane.
  bool dequantize_after_resample = false;
  Variant variant = Variant::kQuantized;
};

// Full coefficient path for one three-component image: decode_coefficients,
// optional de-quantization, planes, size matching, concatenation.
InputTensor BuildInputTensor(const jpeg::CompressedImage& image, const TensorOptions& options);

}  // namespace dctcomp::dct

#endif  // DCTCOMP_DCT_PLANES_H_
