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

#include "dctcomp/data/images.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

#include "dctcomp/dct/full_decode.h"
#include "dctcomp/error.h"
#include "dctcomp/nn/rng.h"

namespace dctcomp::data {

namespace fs = std::filesystem;

namespace {

std::vector<uint8_t> ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> DefaultCifarNames() {
  return {"airplane", "automobile", "bird", "cat", "deer",
          "dog",      "frog",       "horse", "ship", "truck"};
}

bool IsJpegName(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".jpg" || ext == ".jpeg";
}

uint8_t ToByte(double v) { return static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

}  // namespace

std::vector<LabeledImage> ParseCifarBatch(std::span<const uint8_t> bytes, const std::string& source) {
  if (bytes.size() % kCifarRecordBytes != 0) {
    throw Error(ErrorCode::kBadRecordSize, source + ": " + std::to_string(bytes.size()) +
                                               " bytes is not a multiple of " +
                                               std::to_string(kCifarRecordBytes));
  }
  const size_t count = bytes.size() / kCifarRecordBytes;
  constexpr int kPlane = kCifarSide * kCifarSide;
  std::vector<LabeledImage> out(count);
  for (size_t r = 0; r < count; ++r) {
    const uint8_t* rec = bytes.data() + r * kCifarRecordBytes;
    if (rec[0] >= kCifarClasses) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  source + " record " + std::to_string(r) + ": label " + std::to_string(rec[0]));
    }
    LabeledImage& img = out[r];
    img.label = rec[0];
    img.source_id = source + "#" + std::to_string(r);
    img.pixels = RgbImage(kCifarSide, kCifarSide);
    for (int i = 0; i < kPlane; ++i) {
      for (int c = 0; c < 3; ++c) img.pixels.pixels[3 * i + c] = rec[1 + c * kPlane + i];
    }
  }
  return out;
}

TrainTestSplit LoadCifar10(const fs::path& dir) {
  fs::path root = dir;
  if (!fs::exists(root / "test_batch.bin") && fs::exists(dir / "cifar-10-batches-bin")) {
    root = dir / "cifar-10-batches-bin";
  }
  std::vector<std::string> names = DefaultCifarNames();
  if (fs::exists(root / "batches.meta.txt")) {
    const auto bytes = ReadFile(root / "batches.meta.txt");
    std::istringstream meta(std::string(bytes.begin(), bytes.end()));
    std::vector<std::string> read;
    for (std::string line; std::getline(meta, line);) {
      while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
      if (!line.empty()) read.push_back(line);
    }
    if (read.size() == kCifarClasses) names = read;
  }
  TrainTestSplit split;
  split.train.class_names = names;
  split.test.class_names = names;
  auto append = [&](ImageSet& set, const std::string& file) {
    const auto bytes = ReadFile(root / file);
    auto images = ParseCifarBatch(bytes, file);
    std::move(images.begin(), images.end(), std::back_inserter(set.images));
  };
  for (int b = 1; b <= 5; ++b) append(split.train, "data_batch_" + std::to_string(b) + ".bin");
  append(split.test, "test_batch.bin");
  return split;
}

ImageSet LoadJpegFolder(const fs::path& dir, int side) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIoFailure, dir.string() + " is not a directory");
  std::vector<fs::path> classes;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory()) classes.push_back(e.path());
  }
  if (classes.empty()) throw Error(ErrorCode::kEmptyDataset, dir.string() + " has no class subfolders");
  std::sort(classes.begin(), classes.end());
  ImageSet set;
  for (size_t label = 0; label < classes.size(); ++label) {
    set.class_names.push_back(classes[label].filename().string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(classes[label])) {
      if (e.is_regular_file() && IsJpegName(e.path())) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      const std::string id = fs::relative(file, dir).generic_string();
      try {
        const auto bytes = ReadFile(file);
        RgbImage rgb = dct::FullDecode(jpeg::ParseJpeg(bytes));
        if (rgb.width != side || rgb.height != side) rgb = ResizeBilinear(rgb, side, side);
        set.images.push_back({static_cast<int>(label), std::move(rgb), id});
      } catch (const Error& e) {
        set.skipped.push_back(id + ": " + e.what());
      }
    }
  }
  return set;
}

ImageSet MakeSyntheticImages(int num_classes, int per_class, int side, uint64_t seed) {
  if (num_classes < 2 || per_class < 1 || side < 8) {
    throw Error(ErrorCode::kConfigInvalid, "synthetic dataset needs >= 2 classes, >= 1 image, side >= 8");
  }
  ImageSet set;
  for (int k = 0; k < num_classes; ++k) set.class_names.push_back("class" + std::to_string(k));
  nn::Rng rng(seed);
  constexpr double kPi = std::numbers::pi;
  for (int i = 0; i < per_class; ++i) {
    for (int k = 0; k < num_classes; ++k) {
      const double hue = 2 * kPi * k / num_classes;
      const double color[3] = {0.5 + 0.5 * std::cos(hue), 0.5 + 0.5 * std::cos(hue - 2 * kPi / 3),
                               0.5 + 0.5 * std::cos(hue + 2 * kPi / 3)};
      const double angle = kPi * k / num_classes + rng.Uniform(-0.15, 0.15);
      const double period = side / 4.0 * (k % 2 == 0 ? 1.0 : 1.6);
      const double phase = rng.Uniform(0, 2 * kPi);
      const double brightness = rng.Uniform(-25, 25);
      const double cs = std::cos(angle), sn = std::sin(angle);
      LabeledImage img;
      img.label = k;
      img.source_id = "synthetic/" + std::to_string(k) + "/" + std::to_string(i);
      img.pixels = RgbImage(side, side);
      for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
          const double wave = 0.5 + 0.5 * std::sin(2 * kPi * (x * cs + y * sn) / period + phase);
          for (int c = 0; c < 3; ++c) {
            const double v = 50 + 150 * color[c] * wave + brightness + rng.Uniform(-20, 20);
            img.pixels.At(x, y)[c] = ToByte(v);
          }
        }
      }
      set.images.push_back(std::move(img));
    }
  }
  return set;
}

ImageSet SelectClasses(const ImageSet& set, const std::vector<int>& classes, int per_class) {
  ImageSet out;
  std::vector<int> taken(classes.size(), 0);
  for (int c : classes) {
    if (c < 0 || c >= set.num_classes()) {
      throw Error(ErrorCode::kConfigInvalid, "class " + std::to_string(c) + " out of range");
    }
    out.class_names.push_back(set.class_names[c]);
  }
  for (const auto& img : set.images) {
    const auto it = std::find(classes.begin(), classes.end(), img.label);
    if (it == classes.end()) continue;
    const size_t slot = static_cast<size_t>(it - classes.begin());
    if (per_class > 0 && taken[slot] == per_class) continue;
    ++taken[slot];
    out.images.push_back({static_cast<int>(slot), img.pixels, img.source_id});
  }
  for (size_t s = 0; s < classes.size(); ++s) {
    if (taken[s] < per_class || taken[s] == 0) {
      throw Error(ErrorCode::kConfigInvalid, "class " + std::to_string(classes[s]) + " has only " +
                                                 std::to_string(taken[s]) + " images");
    }
  }
  return out;
}

}  // namespace dctcomp::data
