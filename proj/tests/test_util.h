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

#ifndef DCTCOMP_TESTS_TEST_UTIL_H_
#define DCTCOMP_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "dctcomp/error.h"
#include "dctcomp/image.h"
#include "dctcomp/jpeg/codec.h"

namespace dctcomp::testing {

inline std::filesystem::path TestDataDir() { return DCTCOMP_TEST_DATA_DIR; }

inline std::vector<uint8_t> ReadBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<std::filesystem::path> ConformanceFiles() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(TestDataDir() / "conformance")) {
    if (e.path().extension() == ".jpg") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

// Smooth gradients plus noise, so both low and high frequencies occur.
inline RgbImage RandomImage(std::mt19937_64& rng, int width, int height) {
  RgbImage img(width, height);
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_real_distribution<double> slope(-4.0, 4.0);
  std::uniform_int_distribution<int> noise(-40, 40);
  std::uniform_int_distribution<int> byte(0, 255);
  const int style = coin(rng);
  double base[3], gx[3], gy[3];
  for (int c = 0; c < 3; ++c) {
    base[c] = byte(rng);
    gx[c] = slope(rng);
    gy[c] = slope(rng);
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        int v;
        if (style == 0) {
          v = byte(rng);
        } else {
          v = static_cast<int>(base[c] + gx[c] * x + gy[c] * y) + (style == 1 ? noise(rng) : 0);
          if (style == 3 && ((x / 4 + y / 4) % 2 == 0)) v = 255 - v;
        }
        img.At(x, y)[c] = static_cast<uint8_t>(std::clamp(v, 0, 255));
      }
    }
  }
  return img;
}

inline jpeg::PixelPlane ConstantPlane(int width, int height, int value) {
  jpeg::PixelPlane p;
  p.width = width;
  p.height = height;
  p.samples.assign(static_cast<size_t>(width) * height, value);
  return p;
}

// Runs `fn` and returns the ErrorCode it throws; fails the caller's
// expectation via a sentinel when nothing is thrown.
template <typename Fn>
std::string ThrownCode(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return std::string(ErrorCodeName(e.code()));
  }
  return "no error";
}

}  // namespace dctcomp::testing

#endif  // DCTCOMP_TESTS_TEST_UTIL_H_
