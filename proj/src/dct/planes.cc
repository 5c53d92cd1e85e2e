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

#include "dctcomp/dct/planes.h"

#include <string>

#include "dctcomp/error.h"
#include "dctcomp/jpeg/codec.h"
#include "dctcomp/jpeg/tables.h"

namespace dctcomp::dct {

namespace {

int RoundUp8(int v) { return (v + 7) / 8 * 8; }

std::string Dims(const CoefficientPlane& p) {
  return std::to_string(p.width) + "x" + std::to_string(p.height);
}

}  // namespace

std::string ResampleName(Resample r) {
  return r == Resample::kDownsample ? "downsample" : "upsample";
}

std::string VariantName(Variant v) {
  return v == Variant::kQuantized ? "quantized" : "unquantized";
}

Resample ParseResample(const std::string& s) {
  if (s == "downsample") return Resample::kDownsample;
  if (s == "upsample") return Resample::kUpsample;
  throw Error(ErrorCode::kConfigInvalid, "unknown resample mode '" + s + "'");
}

Variant ParseVariant(const std::string& s) {
  if (s == "quantized") return Variant::kQuantized;
  if (s == "unquantized") return Variant::kUnquantized;
  throw Error(ErrorCode::kConfigInvalid, "unknown variant '" + s + "'");
}

jpeg::CoefficientGrid Dequantize(const jpeg::CoefficientGrid& grid,
                                 const jpeg::QuantTable& table) {
  if (table.id != grid.quant_table_id) {
    throw Error(ErrorCode::kTableMismatch,
                "component " + std::to_string(grid.component_id) + " uses table " +
                    std::to_string(grid.quant_table_id) + ", got table " +
                    std::to_string(table.id));
  }
  std::array<int32_t, jpeg::kBlockSize> steps{};
  for (int k = 0; k < jpeg::kBlockSize; ++k) steps[jpeg::kZigzagToNatural[k]] = table.steps[k];
  jpeg::CoefficientGrid out = grid;
  for (auto& block : out.blocks) {
    for (int i = 0; i < jpeg::kBlockSize; ++i) block[i] *= steps[i];
  }
  return out;
}

CoefficientPlane AssemblePlane(const jpeg::CoefficientGrid& grid, int true_width,
                               int true_height) {
  const int width = RoundUp8(true_width);
  const int height = RoundUp8(true_height);
  if (true_width < 1 || true_height < 1 || width > 8 * grid.blocks_wide ||
      height > 8 * grid.blocks_high) {
    throw Error(ErrorCode::kCropExceedsGrid,
                std::to_string(true_width) + "x" + std::to_string(true_height) +
                    " exceeds a " + std::to_string(grid.blocks_wide) + "x" +
                    std::to_string(grid.blocks_high) + " block grid");
  }
  CoefficientPlane plane;
  plane.component_id = grid.component_id;
  plane.width = width;
  plane.height = height;
  plane.values.resize(static_cast<size_t>(width) * height);
  for (int by = 0; by < height / 8; ++by) {
    for (int bx = 0; bx < width / 8; ++bx) {
      const jpeg::CoefficientBlock& block = grid.At(bx, by);
      for (int v = 0; v < 8; ++v) {
        for (int u = 0; u < 8; ++u) plane.At(8 * bx + u, 8 * by + v) = block[v * 8 + u];
      }
    }
  }
  return plane;
}

CoefficientPlane StepPlane(const jpeg::QuantTable& table, int width, int height) {
  if (width % 8 != 0 || height % 8 != 0 || width < 8 || height < 8) {
    throw Error(ErrorCode::kInconsistentGeometry, "step plane must tile whole blocks");
  }
  std::array<double, jpeg::kBlockSize> steps{};
  for (int k = 0; k < jpeg::kBlockSize; ++k) steps[jpeg::kZigzagToNatural[k]] = table.steps[k];
  CoefficientPlane plane;
  plane.width = width;
  plane.height = height;
  plane.values.resize(static_cast<size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) plane.At(x, y) = steps[(y % 8) * 8 + x % 8];
  }
  return plane;
}

CoefficientPlane DownsamplePlane(const CoefficientPlane& plane) {
  if (plane.width % 2 != 0 || plane.height % 2 != 0 || plane.width == 0 || plane.height == 0) {
    throw Error(ErrorCode::kOddDimensions, "cannot halve a " + Dims(plane) + " plane");
  }
  CoefficientPlane out;
  out.component_id = plane.component_id;
  out.width = plane.width / 2;
  out.height = plane.height / 2;
  out.values.resize(static_cast<size_t>(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      // Pairwise sum keeps the mean of four equal values exact.
      const double top = plane.At(2 * x, 2 * y) + plane.At(2 * x + 1, 2 * y);
      const double bottom = plane.At(2 * x, 2 * y + 1) + plane.At(2 * x + 1, 2 * y + 1);
      out.At(x, y) = (top + bottom) * 0.25;
    }
  }
  return out;
}

CoefficientPlane UpsamplePlane(const CoefficientPlane& plane) {
  CoefficientPlane out;
  out.component_id = plane.component_id;
  out.width = plane.width * 2;
  out.height = plane.height * 2;
  out.values.resize(static_cast<size_t>(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) out.At(x, y) = plane.At(x / 2, y / 2);
  }
  return out;
}

CoefficientPlane MultiplyPlanes(const CoefficientPlane& a, const CoefficientPlane& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorCode::kInconsistentGeometry, Dims(a) + " vs " + Dims(b));
  }
  CoefficientPlane out = a;
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
  return out;
}

InputTensor AssembleInput(const CoefficientPlane& y, const CoefficientPlane& cb,
                          const CoefficientPlane& cr, Resample mode, Variant variant) {
  if (cb.width != cr.width || cb.height != cr.height) {
    throw Error(ErrorCode::kInconsistentGeometry, "Cb " + Dims(cb) + " vs Cr " + Dims(cr));
  }
  const CoefficientPlane* planes[3] = {&y, &cb, &cr};
  CoefficientPlane scratch[3];
  if (y.width == cb.width && y.height == cb.height) {
    // 4:4:4, nothing to match.
  } else if (y.width == 2 * cb.width && y.height == 2 * cb.height) {
    if (mode == Resample::kDownsample) {
      scratch[0] = DownsamplePlane(y);
      planes[0] = &scratch[0];
    } else {
      scratch[1] = UpsamplePlane(cb);
      scratch[2] = UpsamplePlane(cr);
      planes[1] = &scratch[1];
      planes[2] = &scratch[2];
    }
  } else {
    throw Error(ErrorCode::kInconsistentGeometry, "Y " + Dims(y) + " vs chroma " + Dims(cb));
  }

  InputTensor t;
  t.height = planes[0]->height;
  t.width = planes[0]->width;
  t.variant = variant;
  t.resample = mode;
  t.values.resize(static_cast<size_t>(t.height) * t.width * InputTensor::kChannels);
  for (int c = 0; c < 3; ++c) {
    const std::vector<double>& src = planes[c]->values;
    for (size_t i = 0; i < src.size(); ++i) {
      t.values[i * InputTensor::kChannels + c] = static_cast<float>(src[i]);
    }
  }
  return t;
}

InputTensor BuildInputTensor(const jpeg::CompressedImage& image, const TensorOptions& options) {
  const jpeg::FrameInfo& f = image.frame;
  if (f.components.size() != 3) {
    throw Error(ErrorCode::kInconsistentGeometry,
                "coefficient tensors need 3 components, image has " +
                    std::to_string(f.components.size()));
  }
  const std::vector<jpeg::CoefficientGrid> grids = jpeg::DecodeCoefficients(image);
  int crop_w[3], crop_h[3];
  for (size_t c = 0; c < 3; ++c) {
    crop_w[c] = f.ComponentWidth(c);
    crop_h[c] = f.ComponentHeight(c);
  }
  // Odd-sized 4:2:0 frames: widen the luma crop into the MCU padding so it
  // stays exactly twice the chroma extent.
  if (crop_w[1] == crop_w[2] && crop_h[1] == crop_h[2] &&
      f.components[0].h_samp == 2 * f.components[1].h_samp &&
      f.components[0].v_samp == 2 * f.components[1].v_samp) {
    crop_w[0] = 2 * RoundUp8(crop_w[1]);
    crop_h[0] = 2 * RoundUp8(crop_h[1]);
  }
  CoefficientPlane planes[3];
  for (size_t c = 0; c < 3; ++c) {
    const jpeg::QuantTable& table = image.QuantTableFor(c);
    const bool dequant_now = options.dequantize && !options.dequantize_after_resample;
    planes[c] = AssemblePlane(dequant_now ? Dequantize(grids[c], table) : grids[c], crop_w[c],
                              crop_h[c]);
  }
  if (!(options.dequantize && options.dequantize_after_resample)) {
    return AssembleInput(planes[0], planes[1], planes[2], options.resample, options.variant);
  }
  // Resample the quantized levels and the step layout identically, then
  // multiply.
  CoefficientPlane steps[3];
  for (size_t c = 0; c < 3; ++c) {
    steps[c] = StepPlane(image.QuantTableFor(c), planes[c].width, planes[c].height);
  }
  const InputTensor levels =
      AssembleInput(planes[0], planes[1], planes[2], options.resample, options.variant);
  const InputTensor step_tensor =
      AssembleInput(steps[0], steps[1], steps[2], options.resample, options.variant);
  InputTensor out = levels;
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] *= step_tensor.values[i];
  return out;
}

}  // namespace dctcomp::dct
