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

#ifndef DCTCOMP_IMAGE_H_
#define DCTCOMP_IMAGE_H_

#include <cstdint>
#include <vector>

#include "dctcomp/jpeg/codec.h"

namespace dctcomp {

// Interleaved 8-bit RGB.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), pixels(static_cast<size_t>(w) * h * 3) {}

  uint8_t* At(int x, int y) { return &pixels[(static_cast<size_t>(y) * width + x) * 3]; }
  const uint8_t* At(int x, int y) const {
    return &pixels[(static_cast<size_t>(y) * width + x) * 3];
  }
};

// JFIF (BT.601 full range) conversion. Under 4:2:0 chroma is the rounded
// mean of each 2x2 cell, with edge replication for odd sizes.
std::vector<jpeg::PixelPlane> RgbToYcbcrPlanes(const RgbImage& image,
                                               jpeg::Subsampling subsampling);

// Bilinear resampling with pixel-center alignment.
RgbImage ResizeBilinear(const RgbImage& image, int width, int height);

}  // namespace dctcomp

#endif  // DCTCOMP_IMAGE_H_
