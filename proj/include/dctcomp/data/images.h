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

// Raw labelled images: the CIFAR-10 binary format, class-per-subfolder JPEG
// trees and a procedural dataset for offline runs.
#ifndef DCTCOMP_DATA_IMAGES_H_
#define DCTCOMP_DATA_IMAGES_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dctcomp/image.h"

namespace dctcomp::data {

struct LabeledImage {
  int label = 0;
  RgbImage pixels;
  std::string source_id;
};

struct ImageSet {
  std::vector<LabeledImage> images;
  std::vector<std::string> class_names;
  // Files that could not be decoded, with the reason.
  std::vector<std::string> skipped;

  int num_classes() const { return static_cast<int>(class_names.size()); }
};

struct TrainTestSplit {
  ImageSet train;
  ImageSet test;
};

inline constexpr int kCifarSide = 32;
inline constexpr int kCifarClasses = 10;
inline constexpr size_t kCifarRecordBytes = 1 + 3 * kCifarSide * kCifarSide;

// Records of one binary batch: a label byte, then the red, green and blue
// 32x32 planes, each row-major. kBadRecordSize unless the length is a whole
// number of records; kLabelOutOfRange for a label above 9.
std::vector<LabeledImage> ParseCifarBatch(std::span<const uint8_t> bytes,
                                          const std::string& source);

// data_batch_1..5.bin and test_batch.bin from `dir` or its
// cifar-10-batches-bin subdirectory. Class names come from batches.meta.txt
// when present. kIoFailure for a missing batch file.
TrainTestSplit LoadCifar10(const std::filesystem::path& dir);

// One subfolder per class, classes in sorted name order. Every .jpg/.jpeg
// file is fully decoded and resized bilinearly to side x side. Files the
// decoder rejects are listed in `skipped` and otherwise ignored.
// kIoFailure if `dir` is not a directory; kEmptyDataset without subfolders.
ImageSet LoadJpegFolder(const std::filesystem::path& dir, int side = 224);

// Procedural classes: class k has its own colour, stripe orientation and
// stripe period; position, phase, brightness and noise vary per image.
// Deterministic in `seed`.
ImageSet MakeSyntheticImages(int num_classes, int per_class, int side, uint64_t seed);

// The first `per_class` images of each listed class (all of them when
// per_class is 0), in source order, with labels renumbered to the position in
// `classes`. kConfigInvalid if a class has fewer images or none.
ImageSet SelectClasses(const ImageSet& set, const std::vector<int>& classes, int per_class);

}  // namespace dctcomp::data

#endif  // DCTCOMP_DATA_IMAGES_H_
