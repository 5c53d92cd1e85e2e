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

// Experiment configuration: a `key = value` file whose fields the CLI flags
// mirror. Every run writes the fully resolved form back for provenance.
#ifndef DCTCOMP_HARNESS_CONFIG_H_
#define DCTCOMP_HARNESS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dctcomp/dct/planes.h"
#include "dctcomp/jpeg/codec.h"
#include "dctcomp/nn/optim.h"

namespace dctcomp::harness {

enum class DatasetKind { kCifar10, kFolder, kSynthetic };

std::string DatasetKindName(DatasetKind k);
DatasetKind ParseDatasetKind(const std::string& s);

struct ExperimentConfig {
  DatasetKind dataset_kind = DatasetKind::kSynthetic;
  // CIFAR-10 batch directory, or a folder with train/ and test/ class trees.
  std::filesystem::path dataset_path;
  // Class subset by source index; empty keeps every class.
  std::vector<int> classes;
  // Images kept per class; 0 keeps all.
  int train_per_class = 0;
  int test_per_class = 0;
  // Folder datasets are resized to image_side x image_side.
  int image_side = 224;
  // Procedural dataset shape.
  int synthetic_classes = 2;
  int synthetic_side = 32;
  int synthetic_train_per_class = 200;
  int synthetic_test_per_class = 50;
  uint64_t synthetic_seed = 7;

  std::vector<dct::Variant> variants = {dct::Variant::kQuantized, dct::Variant::kUnquantized};
  std::vector<dct::Resample> modes = {dct::Resample::kDownsample, dct::Resample::kUpsample};
  int quality = 75;
  jpeg::Subsampling subsampling = jpeg::Subsampling::k420;
  bool normalize = true;
  bool dequantize_after_resample = false;

  std::string arch;  // empty means the default architecture
  nn::Hyperparams hyper;
  bool eval_each_epoch = true;
  // Partial vs full decode benchmark on the first test corpus; 0 skips it.
  int bench_repetitions = 5;

  std::filesystem::path output_dir = "dctcomp_run";
  // Defaults to <output_dir>/corpora.
  std::filesystem::path corpora_dir;
  // Reuse corpora whose descriptor matches instead of regenerating them.
  bool reuse_corpora = false;

  std::filesystem::path CorporaDir() const;
  std::string Arch() const;
  // kConfigInvalid: no cell, bad numbers, missing dataset path.
  void Validate() const;
};

// Unknown keys and malformed values are kConfigInvalid. Keys absent from
// `text` keep the values already in `base`.
ExperimentConfig ParseConfig(const std::string& text, ExperimentConfig base = {});
// Applies one `key=value` override, as used by command line flags.
void SetConfigValue(ExperimentConfig& cfg, const std::string& key, const std::string& value);
ExperimentConfig LoadConfig(const std::filesystem::path& path);
// Every field, in a form ParseConfig reads back to an equal config.
std::string FormatConfig(const ExperimentConfig& cfg);

}  // namespace dctcomp::harness

#endif  // DCTCOMP_HARNESS_CONFIG_H_
