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

#ifndef DCTCOMP_DCT_FULL_DECODE_H_
#define DCTCOMP_DCT_FULL_DECODE_H_

#include <vector>

#include "dctcomp/image.h"
#include "dctcomp/jpeg/types.h"

namespace dctcomp::dct {

// Reconstructed samples of one component over its padded grid extent.
jpeg::PixelPlane ReconstructComponent(const jpeg::CoefficientGrid& grid,
                                      const jpeg::QuantTable& table);

// Conventional decode: de-quantize, IDCT, +128, clamp, chroma replication,
// YCbCr -> RGB. Grayscale images come back with R = G = B.
RgbImage FullDecode(const jpeg::CompressedImage& image);

}  // namespace dctcomp::dct

#endif  // DCTCOMP_DCT_FULL_DECODE_H_
