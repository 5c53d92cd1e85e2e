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

#include "dctcomp/image.h"

#include <algorithm>
#include <cmath>

#include "dctcomp/error.h"

namespace dctcomp {

namespace {

int ClampByte(double v) { return static_cast<int>(std::clamp(std::lround(v), 0L, 255L)); }

}  // namespace

std::vector<jpeg::PixelPlane> RgbToYcbcrPlanes(const RgbImage& image,
                                               jpeg::Subsampling subsampling) {
  const int w = image.width;
  const int h = image.height;
  std::vector<jpeg::PixelPlane> full(3);
  for (auto& p : full) {
    p.width = w;
    p.height = h;
    p.samples.resize(static_cast<size_t>(w) * h);
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const uint8_t* px = image.At(x, y);
      const double r = px[0], g = px[1], b = px[2];
      const size_t i = static_cast<size_t>(y) * w + x;
      full[0].samples[i] = ClampByte(0.299 * r + 0.587 * g + 0.114 * b);
      full[1].samples[i] = ClampByte(-0.168736 * r - 0.331264 * g + 0.5 * b + 128.0);
      full[2].samples[i] = ClampByte(0.5 * r - 0.418688 * g - 0.081312 * b + 128.0);
    }
  }
  if (subsampling == jpeg::Subsampling::k444) return full;

  const int cw = (w + 1) / 2;
  const int ch = (h + 1) / 2;
  for (int c = 1; c < 3; ++c) {
    jpeg::PixelPlane sub;
    sub.width = cw;
    sub.height = ch;
    sub.samples.resize(static_cast<size_t>(cw) * ch);
    for (int y = 0; y < ch; ++y) {
      const int y0 = 2 * y;
      const int y1 = std::min(2 * y + 1, h - 1);
      for (int x = 0; x < cw; ++x) {
        const int x0 = 2 * x;
        const int x1 = std::min(2 * x + 1, w - 1);
        const int sum = full[c].At(x0, y0) + full[c].At(x1, y0) + full[c].At(x0, y1) +
                        full[c].At(x1, y1);
        sub.samples[static_cast<size_t>(y) * cw + x] = (sum + 2) / 4;
      }
    }
    full[c] = std::move(sub);
  }
  return full;
}

RgbImage ResizeBilinear(const RgbImage& image, int width, int height) {
  if (width < 1 || height < 1 || image.width < 1 || image.height < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "resize to or from an empty image");
  }
  RgbImage out(width, height);
  const double sx = static_cast<double>(image.width) / width;
  const double sy = static_cast<double>(image.height) / height;
  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, image.height - 1.0);
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, image.height - 1);
    const double wy = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, image.width - 1.0);
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, image.width - 1);
      const double wx = fx - x0;
      for (int c = 0; c < 3; ++c) {
        const double top = image.At(x0, y0)[c] * (1 - wx) + image.At(x1, y0)[c] * wx;
        const double bottom = image.At(x0, y1)[c] * (1 - wx) + image.At(x1, y1)[c] * wx;
        out.At(x, y)[c] = static_cast<uint8_t>(ClampByte(top * (1 - wy) + bottom * wy));
      }
    }
  }
  return out;
}

}  // namespace dctcomp
