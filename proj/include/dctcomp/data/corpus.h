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

// Compressed-variant corpora on disk and the labelled tensor stream that
// feeds training from their DCT coefficients.
#ifndef DCTCOMP_DATA_CORPUS_H_
#define DCTCOMP_DATA_CORPUS_H_

#include <array>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "dctcomp/data/images.h"
#include "dctcomp/dct/planes.h"
#include "dctcomp/jpeg/codec.h"
#include "dctcomp/nn/rng.h"
#include "dctcomp/nn/train.h"

namespace dctcomp::data {

struct ManifestEntry {
  std::string path;  // relative to the corpus directory
  int label = 0;
};

struct VariantCorpus {
  dct::Variant variant = dct::Variant::kQuantized;
  // Quality of the scaled standard tables; unused by unit-table corpora.
  int quality = 75;
  jpeg::Subsampling subsampling = jpeg::Subsampling::k420;
  int width = 0;
  int height = 0;
  int num_classes = 0;
  std::filesystem::path dir;
  std::vector<ManifestEntry> entries;
};

inline constexpr char kManifestName[] = "manifest.tsv";
inline constexpr char kCorpusConfigName[] = "corpus.cfg";

std::string SubsamplingName(jpeg::Subsampling s);
// "420" or "444"; kConfigInvalid otherwise.
jpeg::Subsampling ParseSubsampling(const std::string& s);

// The tables a corpus embeds: scaled standard tables, or all ones.
std::vector<jpeg::QuantTable> CorpusTables(dct::Variant variant, int quality);

// One `relative/path<TAB>label` line per entry.
std::string FormatManifest(const std::vector<ManifestEntry>& entries);
// kConfigInvalid for a malformed line.
std::vector<ManifestEntry> ParseManifest(const std::string& text);

// Encodes every image to <out_dir>/img_NNNNNN.jpg and writes the manifest
// and corpus.cfg. Output bytes depend only on the inputs, so re-running
// reproduces the corpus exactly; stale img_ files are removed. All images
// must share one geometry with sides divisible by 16 (8 under 4:4:4),
// otherwise kInconsistentGeometry. kIoFailure on write errors.
VariantCorpus GenerateVariants(const ImageSet& images, dct::Variant variant, int quality,
                               jpeg::Subsampling subsampling, const std::filesystem::path& out_dir);

// Reads corpus.cfg and the manifest. kIoFailure when either file or any
// listed image is missing.
VariantCorpus LoadCorpus(const std::filesystem::path& dir);

// Per component and per DCT frequency (u, v) mean and standard deviation of
// de-quantized coefficients. Frozen once computed and shared by every cell.
struct Normalization {
  static constexpr int kSlots = 3 * 64;
  // Index c * 64 + v * 8 + u.
  std::array<double, kSlots> mean{};
  std::array<double, kSlots> stddev{};
  bool enabled = false;

  static Normalization Identity();
};

// Deviations below this floor (one coefficient unit) are raised to it, so
// frequencies that are almost always zero are not blown up.
inline constexpr double kMinStddev = 1.0;

// Statistics over the whole corpus, computed from the coefficient planes
// before any resampling. kEmptyCorpus for an empty corpus.
Normalization ComputeNormalization(const VariantCorpus& corpus);

std::string FormatNormalization(const Normalization& n);
Normalization ParseNormalization(const std::string& text);

struct StreamOptions {
  dct::Resample resample = dct::Resample::kUpsample;
  bool dequantize = true;
  bool dequantize_after_resample = false;
  Normalization normalization = Normalization::Identity();
};

// Random-access view of a corpus as network input. Fetch reads, parses and
// partially decodes each file on demand. A decode failure throws
// kUndecodableFile naming the file.
class CorpusSource final : public nn::SampleSource {
 public:
  CorpusSource(VariantCorpus corpus, StreamOptions options);

  size_t size() const override { return corpus_.entries.size(); }
  nn::Shape3 shape() const override { return shape_; }
  int num_classes() const override { return corpus_.num_classes; }
  void Fetch(std::span<const size_t> indices, nn::Batch& out) override;

  const VariantCorpus& corpus() const { return corpus_; }
  const StreamOptions& options() const { return options_; }
  // The tensor of one sample, after normalization.
  dct::InputTensor Load(size_t index) const;

 private:
  VariantCorpus corpus_;
  StreamOptions options_;
  nn::Shape3 shape_;
  // Element-wise mean and 1/stddev over the tensor layout.
  std::vector<float> shift_;
  std::vector<float> scale_;
};

// Batches of one epoch in seeded shuffled order; the last may be partial.
class BatchStream {
 public:
  BatchStream(nn::SampleSource& source, int batch_size, uint64_t seed);

  // Starts epoch `epoch`; the order matches nn::EpochOrder(size, seed, epoch).
  void Reset(int epoch);
  bool Next(nn::Batch& out);

 private:
  nn::SampleSource& source_;
  int batch_size_;
  uint64_t seed_;
  std::vector<size_t> order_;
  size_t pos_ = 0;
};

}  // namespace dctcomp::data

#endif  // DCTCOMP_DATA_CORPUS_H_
