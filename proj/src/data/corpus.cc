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

#include "dctcomp/data/corpus.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "dctcomp/error.h"
#include "dctcomp/jpeg/tables.h"
#include "dctcomp/kvfile.h"

namespace dctcomp::data {

namespace fs = std::filesystem;

namespace {

int RoundUp8(int v) { return (v + 7) / 8 * 8; }

std::string FileName(size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "img_%06zu.jpg", index);
  return buf;
}

std::vector<uint8_t> ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const fs::path& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
}

struct PlaneSizes {
  int luma_w, luma_h, chroma_w, chroma_h;
};

PlaneSizes SizesFor(const VariantCorpus& c) {
  if (c.subsampling == jpeg::Subsampling::k444) {
    const int w = RoundUp8(c.width), h = RoundUp8(c.height);
    return {w, h, w, h};
  }
  const int cw = RoundUp8((c.width + 1) / 2), ch = RoundUp8((c.height + 1) / 2);
  return {2 * cw, 2 * ch, cw, ch};
}

// A plane of the given size holding, at every position, the statistic of
// that position's frequency.
dct::CoefficientPlane TiledPlane(const Normalization& n, bool use_mean, int component, int width,
                                 int height) {
  dct::CoefficientPlane p;
  p.width = width;
  p.height = height;
  p.values.resize(static_cast<size_t>(width) * height);
  const auto& stat = use_mean ? n.mean : n.stddev;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) p.At(x, y) = stat[component * 64 + (y % 8) * 8 + x % 8];
  }
  return p;
}

std::string JoinDoubles(const std::array<double, Normalization::kSlots>& v) {
  std::string out;
  char buf[40];
  for (size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s%.17g", i ? " " : "", v[i]);
    out += buf;
  }
  return out;
}

std::array<double, Normalization::kSlots> SplitDoubles(const std::string& key, const std::string& s) {
  std::array<double, Normalization::kSlots> out{};
  std::istringstream in(s);
  std::string tok;
  size_t i = 0;
  while (in >> tok) {
    if (i == out.size()) throw Error(ErrorCode::kConfigInvalid, key + ": too many values");
    out[i++] = ParseDoubleValue(key, tok);
  }
  if (i != out.size()) throw Error(ErrorCode::kConfigInvalid, key + ": expected 192 values");
  return out;
}

}  // namespace

std::string SubsamplingName(jpeg::Subsampling s) {
  return s == jpeg::Subsampling::k420 ? "420" : "444";
}

jpeg::Subsampling ParseSubsampling(const std::string& s) {
  if (s == "420") return jpeg::Subsampling::k420;
  if (s == "444") return jpeg::Subsampling::k444;
  throw Error(ErrorCode::kConfigInvalid, "unknown subsampling '" + s + "'");
}

std::vector<jpeg::QuantTable> CorpusTables(dct::Variant variant, int quality) {
  if (variant == dct::Variant::kUnquantized) return jpeg::UnitQuantTables();
  if (quality < 1 || quality > 100) {
    throw Error(ErrorCode::kConfigInvalid, "quality " + std::to_string(quality) + " not in [1, 100]");
  }
  return jpeg::StandardQuantTables(quality);
}

std::string FormatManifest(const std::vector<ManifestEntry>& entries) {
  std::string out;
  for (const auto& e : entries) out += e.path + "\t" + std::to_string(e.label) + "\n";
  return out;
}

std::vector<ManifestEntry> ParseManifest(const std::string& text) {
  std::vector<ManifestEntry> out;
  std::istringstream in(text);
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.rfind('\t');
    const std::string where = "manifest line " + std::to_string(number);
    if (tab == std::string::npos || tab == 0) {
      throw Error(ErrorCode::kConfigInvalid, where + ": expected path<TAB>label");
    }
    const int label = ParseIntValue(where, line.substr(tab + 1));
    if (label < 0) throw Error(ErrorCode::kConfigInvalid, where + ": negative label");
    out.push_back({line.substr(0, tab), label});
  }
  return out;
}

VariantCorpus GenerateVariants(const ImageSet& images, dct::Variant variant, int quality,
                               jpeg::Subsampling subsampling, const fs::path& out_dir) {
  const auto tables = CorpusTables(variant, quality);
  if (images.images.empty()) throw Error(ErrorCode::kEmptyCorpus, "no images to encode");
  VariantCorpus corpus;
  corpus.variant = variant;
  corpus.quality = quality;
  corpus.subsampling = subsampling;
  corpus.width = images.images[0].pixels.width;
  corpus.height = images.images[0].pixels.height;
  corpus.num_classes = images.num_classes();
  corpus.dir = out_dir;
  const int unit = subsampling == jpeg::Subsampling::k420 ? 16 : 8;
  if (corpus.width % unit != 0 || corpus.height % unit != 0) {
    throw Error(ErrorCode::kInconsistentGeometry,
                std::to_string(corpus.width) + "x" + std::to_string(corpus.height) +
                    " is not a multiple of " + std::to_string(unit));
  }
  for (const auto& img : images.images) {
    if (img.pixels.width != corpus.width || img.pixels.height != corpus.height) {
      throw Error(ErrorCode::kInconsistentGeometry, img.source_id + " differs in size");
    }
    if (img.label < 0 || img.label >= corpus.num_classes) {
      throw Error(ErrorCode::kLabelOutOfRange, img.source_id + ": label " + std::to_string(img.label));
    }
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) throw Error(ErrorCode::kIoFailure, "cannot create " + out_dir.string());
  for (const auto& e : fs::directory_iterator(out_dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("img_", 0) == 0 && e.path().extension() == ".jpg") fs::remove(e.path());
  }
  jpeg::EncodeOptions options;
  options.subsampling = subsampling;
  for (size_t i = 0; i < images.images.size(); ++i) {
    const auto& img = images.images[i];
    const auto planes = RgbToYcbcrPlanes(img.pixels, subsampling);
    const std::string name = FileName(i);
    WriteFile(out_dir / name, jpeg::EncodeJpeg(planes, tables, options));
    corpus.entries.push_back({name, img.label});
  }
  WriteTextFile(out_dir / kManifestName, FormatManifest(corpus.entries));
  WriteTextFile(out_dir / kCorpusConfigName,
                FormatKeyValues({{"variant", dct::VariantName(variant)},
                                 {"quality", std::to_string(quality)},
                                 {"subsampling", SubsamplingName(subsampling)},
                                 {"width", std::to_string(corpus.width)},
                                 {"height", std::to_string(corpus.height)},
                                 {"num_classes", std::to_string(corpus.num_classes)},
                                 {"count", std::to_string(corpus.entries.size())}}));
  return corpus;
}

VariantCorpus LoadCorpus(const fs::path& dir) {
  VariantCorpus corpus;
  corpus.dir = dir;
  int count = -1;
  for (const auto& [key, value] : ParseKeyValues(ReadTextFile(dir / kCorpusConfigName))) {
    if (key == "variant") {
      corpus.variant = dct::ParseVariant(value);
    } else if (key == "quality") {
      corpus.quality = ParseIntValue(key, value);
    } else if (key == "subsampling") {
      corpus.subsampling = ParseSubsampling(value);
    } else if (key == "width") {
      corpus.width = ParseIntValue(key, value);
    } else if (key == "height") {
      corpus.height = ParseIntValue(key, value);
    } else if (key == "num_classes") {
      corpus.num_classes = ParseIntValue(key, value);
    } else if (key == "count") {
      count = ParseIntValue(key, value);
    } else {
      throw Error(ErrorCode::kConfigInvalid, "unknown corpus key '" + key + "'");
    }
  }
  if (corpus.width < 1 || corpus.height < 1 || corpus.num_classes < 1) {
    throw Error(ErrorCode::kConfigInvalid, dir.string() + ": incomplete corpus.cfg");
  }
  corpus.entries = ParseManifest(ReadTextFile(dir / kManifestName));
  if (count >= 0 && static_cast<size_t>(count) != corpus.entries.size()) {
    throw Error(ErrorCode::kConfigInvalid, dir.string() + ": manifest has " +
                                               std::to_string(corpus.entries.size()) +
                                               " entries, corpus.cfg says " + std::to_string(count));
  }
  for (const auto& e : corpus.entries) {
    if (!fs::is_regular_file(dir / e.path)) throw Error(ErrorCode::kIoFailure, "missing " + e.path);
    if (e.label >= corpus.num_classes) {
      throw Error(ErrorCode::kLabelOutOfRange, e.path + ": label " + std::to_string(e.label));
    }
  }
  return corpus;
}

Normalization Normalization::Identity() {
  Normalization n;
  n.mean.fill(0.0);
  n.stddev.fill(1.0);
  n.enabled = false;
  return n;
}

Normalization ComputeNormalization(const VariantCorpus& corpus) {
  if (corpus.entries.empty()) throw Error(ErrorCode::kEmptyCorpus, corpus.dir.string() + " is empty");
  std::array<double, Normalization::kSlots> sum{}, sum_sq{};
  std::array<double, 3> blocks{};
  for (const auto& e : corpus.entries) {
    const auto bytes = ReadFile(corpus.dir / e.path);
    jpeg::CompressedImage image;
    std::vector<jpeg::CoefficientGrid> grids;
    try {
      image = jpeg::ParseJpeg(bytes);
      grids = jpeg::DecodeCoefficients(image);
    } catch (const Error& err) {
      throw Error(ErrorCode::kUndecodableFile, e.path + ": " + err.what());
    }
    if (grids.size() != 3) throw Error(ErrorCode::kUndecodableFile, e.path + ": not 3 components");
    for (size_t c = 0; c < 3; ++c) {
      const jpeg::CoefficientGrid g = dct::Dequantize(grids[c], image.QuantTableFor(c));
      const int bw = (image.frame.ComponentWidth(c) + 7) / 8;
      const int bh = (image.frame.ComponentHeight(c) + 7) / 8;
      for (int by = 0; by < bh; ++by) {
        for (int bx = 0; bx < bw; ++bx) {
          const auto& block = g.At(bx, by);
          for (int i = 0; i < 64; ++i) {
            const double v = block[i];
            sum[c * 64 + i] += v;
            sum_sq[c * 64 + i] += v * v;
          }
        }
      }
      blocks[c] += static_cast<double>(bw) * bh;
    }
  }
  Normalization n;
  n.enabled = true;
  for (int s = 0; s < Normalization::kSlots; ++s) {
    const double count = blocks[s / 64];
    const double mean = sum[s] / count;
    const double var = std::max(0.0, sum_sq[s] / count - mean * mean);
    n.mean[s] = mean;
    n.stddev[s] = std::max(std::sqrt(var), kMinStddev);
  }
  return n;
}

std::string FormatNormalization(const Normalization& n) {
  return FormatKeyValues({{"enabled", n.enabled ? "true" : "false"},
                          {"mean", JoinDoubles(n.mean)},
                          {"stddev", JoinDoubles(n.stddev)}});
}

Normalization ParseNormalization(const std::string& text) {
  Normalization n = Normalization::Identity();
  bool have_mean = false, have_std = false;
  for (const auto& [key, value] : ParseKeyValues(text)) {
    if (key == "enabled") {
      n.enabled = ParseBoolValue(key, value);
    } else if (key == "mean") {
      n.mean = SplitDoubles(key, value);
      have_mean = true;
    } else if (key == "stddev") {
      n.stddev = SplitDoubles(key, value);
      have_std = true;
    } else {
      throw Error(ErrorCode::kConfigInvalid, "unknown normalization key '" + key + "'");
    }
  }
  if (!have_mean || !have_std) throw Error(ErrorCode::kConfigInvalid, "normalization needs mean and stddev");
  for (double s : n.stddev) {
    if (!(s > 0)) throw Error(ErrorCode::kConfigInvalid, "normalization stddev must be positive");
  }
  return n;
}

CorpusSource::CorpusSource(VariantCorpus corpus, StreamOptions options)
    : corpus_(std::move(corpus)), options_(std::move(options)) {
  const PlaneSizes s = SizesFor(corpus_);
  const bool halve = corpus_.subsampling == jpeg::Subsampling::k420 &&
                     options_.resample == dct::Resample::kDownsample;
  shape_ = halve ? nn::Shape3{s.chroma_h, s.chroma_w, 3} : nn::Shape3{s.luma_h, s.luma_w, 3};
  if (!options_.normalization.enabled) return;
  dct::CoefficientPlane mean[3], stddev[3];
  for (int c = 0; c < 3; ++c) {
    const int w = c == 0 ? s.luma_w : s.chroma_w;
    const int h = c == 0 ? s.luma_h : s.chroma_h;
    mean[c] = TiledPlane(options_.normalization, true, c, w, h);
    stddev[c] = TiledPlane(options_.normalization, false, c, w, h);
  }
  const auto m = dct::AssembleInput(mean[0], mean[1], mean[2], options_.resample, corpus_.variant);
  const auto d =
      dct::AssembleInput(stddev[0], stddev[1], stddev[2], options_.resample, corpus_.variant);
  shift_ = m.values;
  scale_.resize(d.values.size());
  for (size_t i = 0; i < scale_.size(); ++i) scale_[i] = 1.0f / d.values[i];
}

dct::InputTensor CorpusSource::Load(size_t index) const {
  const ManifestEntry& e = corpus_.entries.at(index);
  const fs::path path = corpus_.dir / e.path;
  dct::InputTensor t;
  try {
    const auto bytes = ReadFile(path);
    dct::TensorOptions topt;
    topt.resample = options_.resample;
    topt.dequantize = options_.dequantize;
    topt.dequantize_after_resample = options_.dequantize_after_resample;
    topt.variant = corpus_.variant;
    t = dct::BuildInputTensor(jpeg::ParseJpeg(bytes), topt);
  } catch (const Error& err) {
    throw Error(ErrorCode::kUndecodableFile, path.string() + ": " +
                                                 std::string(ErrorCodeName(err.code())) + " " +
                                                 err.what());
  }
  if (t.height != shape_.h || t.width != shape_.w) {
    throw Error(ErrorCode::kUndecodableFile,
                path.string() + ": tensor " + std::to_string(t.width) + "x" +
                    std::to_string(t.height) + " does not match the corpus geometry");
  }
  if (options_.normalization.enabled) {
    for (size_t i = 0; i < t.values.size(); ++i) t.values[i] = (t.values[i] - shift_[i]) * scale_[i];
  }
  return t;
}

void CorpusSource::Fetch(std::span<const size_t> indices, nn::Batch& out) {
  out.x.Resize(static_cast<int>(indices.size()), shape_);
  out.labels.resize(indices.size());
  const size_t per = shape_.size();
  for (size_t b = 0; b < indices.size(); ++b) {
    const dct::InputTensor t = Load(indices[b]);
    std::copy(t.values.begin(), t.values.end(), out.x.data.begin() + b * per);
    out.labels[b] = corpus_.entries[indices[b]].label;
  }
}

BatchStream::BatchStream(nn::SampleSource& source, int batch_size, uint64_t seed)
    : source_(source), batch_size_(batch_size), seed_(seed) {
  if (batch_size < 1) throw Error(ErrorCode::kConfigInvalid, "batch size must be positive");
  Reset(0);
}

void BatchStream::Reset(int epoch) {
  order_ = nn::EpochOrder(source_.size(), seed_, epoch);
  pos_ = 0;
}

bool BatchStream::Next(nn::Batch& out) {
  if (pos_ >= order_.size()) return false;
  const size_t n = std::min(order_.size() - pos_, static_cast<size_t>(batch_size_));
  source_.Fetch(std::span<const size_t>(order_).subspan(pos_, n), out);
  pos_ += n;
  return true;
}

}  // namespace dctcomp::data
