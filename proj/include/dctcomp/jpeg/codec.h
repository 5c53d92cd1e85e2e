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

// Baseline sequential JPEG: marker parsing, entropy decoding up to the
// quantized DCT coefficients, and an encoder that writes JFIF streams with
// the Annex K Huffman tables.

#ifndef DCTCOMP_JPEG_CODEC_H_
#define DCTCOMP_JPEG_CODEC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dctcomp/jpeg/types.h"

namespace dctcomp::jpeg {

// Accepts SOF0/SOF1 8-bit Huffman streams with a single scan that covers
// every frame component. APPn and COM segments are skipped.
//
// Errors: kMissingSOI, kUnsupportedMarker (progressive, lossless,
// arithmetic, multi-scan, precision other than 8), kTruncatedStream,
// kBadTableSlot, kMalformedSegment, kOverfullCodeSpace.
CompressedImage ParseJpeg(std::span<const uint8_t> bytes);

// The partial-decode exit: Huffman decoding, run-length expansion, DC
// prediction and zigzag reordering, stopping before de-quantization. One grid
// per frame component, in frame order, covering the padded MCU extent.
//
// Errors: kBitstreamExhausted, kInvalidHuffmanCode, kBadRestartMarker,
// kBadTableSlot.
std::vector<CoefficientGrid> DecodeCoefficients(const CompressedImage& image);

// Re-emits a parsed image as a JFIF stream. The entropy payload is copied
// verbatim.
std::vector<uint8_t> WriteJpeg(const CompressedImage& image);

enum class Subsampling { k444, k420 };

// 8-bit samples of one component at that component's own resolution. Stored
// wide so out-of-range input can be reported instead of wrapping.
struct PixelPlane {
  int width = 0;
  int height = 0;
  std::vector<int> samples;

  int At(int x, int y) const { return samples[static_cast<size_t>(y) * width + x]; }
};

struct EncodeOptions {
  Subsampling subsampling = Subsampling::k420;
  int restart_interval = 0;
};

// Frame header for `num_components` (1 or 3) at the given geometry. Luma uses
// quant table 0, chroma uses table 1 when `chroma_table` is true.
FrameInfo MakeFrame(int width, int height, int num_components,
                    Subsampling subsampling, bool chroma_table);

// Forward DCT and quantization of level-shifted samples. One plane means
// grayscale; three planes are Y, Cb, Cr with chroma at ceil(w/2) x ceil(h/2)
// under 4:2:0. Edges are padded by sample replication to the MCU extent.
// AC levels are clamped to +-1023 and DC levels to [-1024, 1023], so every
// DC difference fits category 11.
//
// Errors: kDimensionMismatch, kSampleOutOfRange, kBadTableSlot.
std::vector<CoefficientGrid> QuantizePlanes(std::span<const PixelPlane> planes,
                                            std::span<const QuantTable> tables,
                                            Subsampling subsampling);

// Entropy codes `grids` (as produced by QuantizePlanes for `frame`) into a
// complete JFIF stream.
std::vector<uint8_t> EncodeCoefficients(const FrameInfo& frame,
                                        std::span<const CoefficientGrid> grids,
                                        std::span<const QuantTable> tables,
                                        int restart_interval = 0);

// QuantizePlanes followed by EncodeCoefficients.
std::vector<uint8_t> EncodeJpeg(std::span<const PixelPlane> planes,
                                std::span<const QuantTable> tables,
                                const EncodeOptions& options = {});

}  // namespace dctcomp::jpeg

#endif  // DCTCOMP_JPEG_CODEC_H_
