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

#include "dctcomp/harness/config.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "dctcomp/data/corpus.h"
#include "dctcomp/error.h"
#include "dctcomp/kvfile.h"
#include "dctcomp/nn/network.h"

namespace dctcomp::harness {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void Invalid(const std::string& msg) { throw Error(ErrorCode::kConfigInvalid, msg); }

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T, typename F>
std::string JoinList(const std::vector<T>& v, F&& name) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + name(v[i]);
  return out;
}

uint64_t ParseU64(const std::string& key, const std::string& value) {
  uint64_t v = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (value.empty() || ec != std::errc() || ptr != end) Invalid(key + ": '" + value + "' is not an unsigned integer");
  return v;
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Bool(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string DatasetKindName(DatasetKind k) {
  switch (k) {
    case DatasetKind::kCifar10: return "cifar10";
    case DatasetKind::kFolder: return "folder";
    case DatasetKind::kSynthetic: return "synthetic";
  }
  return "?";
}

DatasetKind ParseDatasetKind(const std::string& s) {
  if (s == "cifar10") return DatasetKind::kCifar10;
  if (s == "folder") return DatasetKind::kFolder;
  if (s == "synthetic") return DatasetKind::kSynthetic;
  Invalid("unknown dataset kind '" + s + "'");
}

fs::path ExperimentConfig::CorporaDir() const {
  return corpora_dir.empty() ? output_dir / "corpora" : corpora_dir;
}

std::string ExperimentConfig::Arch() const { return arch.empty() ? nn::kDefaultArch : arch; }

void ExperimentConfig::Validate() const {
  if (variants.empty() || modes.empty()) Invalid("at least one variant and one mode are required");
  auto unique = [](auto v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!unique(variants) || !unique(modes)) Invalid("variants and modes must not repeat");
  hyper.Validate();
  if (quality < 1 || quality > 100) Invalid("quality must be in [1, 100]");
  if (train_per_class < 0 || test_per_class < 0) Invalid("per-class counts must be >= 0");
  if (bench_repetitions != 0 && bench_repetitions < 5) Invalid("bench_repetitions must be 0 or >= 5");
  if (output_dir.empty()) Invalid("output_dir is required");
  const int unit = subsampling == jpeg::Subsampling::k420 ? 16 : 8;
  switch (dataset_kind) {
    case DatasetKind::kSynthetic:
      if (synthetic_classes < 2) Invalid("synthetic_classes must be >= 2");
      if (synthetic_train_per_class < 1 || synthetic_test_per_class < 1) {
        Invalid("synthetic per-class counts must be >= 1");
      }
      if (synthetic_side < unit || synthetic_side % unit != 0) {
        Invalid("synthetic_side must be a multiple of " + std::to_string(unit));
      }
      break;
    case DatasetKind::kFolder:
      if (image_side < unit || image_side % unit != 0) {
        Invalid("image_side must be a multiple of " + std::to_string(unit));
      }
      if (!fs::is_directory(dataset_path / "train") || !fs::is_directory(dataset_path / "test")) {
        Invalid("folder dataset needs " + (dataset_path / "train").string() + " and test/");
      }
      break;
    case DatasetKind::kCifar10:
      if (!fs::is_directory(dataset_path)) Invalid("dataset_path " + dataset_path.string() + " does not exist");
      break;
  }
}

void SetConfigValue(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "dataset_kind") {
    c.dataset_kind = ParseDatasetKind(value);
  } else if (key == "dataset_path") {
    c.dataset_path = value;
  } else if (key == "classes") {
    c.classes.clear();
    for (const auto& s : SplitList(value)) c.classes.push_back(ParseIntValue(key, s));
  } else if (key == "train_per_class") {
    c.train_per_class = ParseIntValue(key, value);
  } else if (key == "test_per_class") {
    c.test_per_class = ParseIntValue(key, value);
  } else if (key == "image_side") {
    c.image_side = ParseIntValue(key, value);
  } else if (key == "synthetic_classes") {
    c.synthetic_classes = ParseIntValue(key, value);
  } else if (key == "synthetic_side") {
    c.synthetic_side = ParseIntValue(key, value);
  } else if (key == "synthetic_train_per_class") {
    c.synthetic_train_per_class = ParseIntValue(key, value);
  } else if (key == "synthetic_test_per_class") {
    c.synthetic_test_per_class = ParseIntValue(key, value);
  } else if (key == "synthetic_seed") {
    c.synthetic_seed = ParseU64(key, value);
  } else if (key == "variants") {
    c.variants.clear();
    for (const auto& s : SplitList(value)) c.variants.push_back(dct::ParseVariant(s));
  } else if (key == "modes") {
    c.modes.clear();
    for (const auto& s : SplitList(value)) c.modes.push_back(dct::ParseResample(s));
  } else if (key == "quality") {
    c.quality = ParseIntValue(key, value);
  } else if (key == "subsampling") {
    c.subsampling = data::ParseSubsampling(value);
  } else if (key == "normalize") {
    c.normalize = ParseBoolValue(key, value);
  } else if (key == "dequantize_after_resample") {
    c.dequantize_after_resample = ParseBoolValue(key, value);
  } else if (key == "arch") {
    c.arch = value;
  } else if (key == "base_lr") {
    c.hyper.base_lr = ParseDoubleValue(key, value);
  } else if (key == "lr_decay") {
    c.hyper.decay = ParseDoubleValue(key, value);
  } else if (key == "decay_every") {
    c.hyper.decay_every = ParseIntValue(key, value);
  } else if (key == "batch_size") {
    c.hyper.batch_size = ParseIntValue(key, value);
  } else if (key == "epochs") {
    c.hyper.epochs = ParseIntValue(key, value);
  } else if (key == "beta1") {
    c.hyper.beta1 = ParseDoubleValue(key, value);
  } else if (key == "beta2") {
    c.hyper.beta2 = ParseDoubleValue(key, value);
  } else if (key == "adam_eps") {
    c.hyper.eps = ParseDoubleValue(key, value);
  } else if (key == "seed") {
    c.hyper.seed = ParseU64(key, value);
  } else if (key == "eval_each_epoch") {
    c.eval_each_epoch = ParseBoolValue(key, value);
  } else if (key == "bench_repetitions") {
    c.bench_repetitions = ParseIntValue(key, value);
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "corpora_dir") {
    c.corpora_dir = value;
  } else if (key == "reuse_corpora") {
    c.reuse_corpora = ParseBoolValue(key, value);
  } else {
    Invalid("unknown config key '" + key + "'");
  }
}

ExperimentConfig ParseConfig(const std::string& text, ExperimentConfig base) {
  for (const auto& [key, value] : ParseKeyValues(text)) SetConfigValue(base, key, value);
  return base;
}

ExperimentConfig LoadConfig(const fs::path& path) { return ParseConfig(ReadTextFile(path)); }

std::string FormatConfig(const ExperimentConfig& c) {
  const auto& h = c.hyper;
  return FormatKeyValues({
      {"dataset_kind", DatasetKindName(c.dataset_kind)},
      {"dataset_path", c.dataset_path.string()},
      {"classes", JoinList(c.classes, [](int v) { return std::to_string(v); })},
      {"train_per_class", std::to_string(c.train_per_class)},
      {"test_per_class", std::to_string(c.test_per_class)},
      {"image_side", std::to_string(c.image_side)},
      {"synthetic_classes", std::to_string(c.synthetic_classes)},
      {"synthetic_side", std::to_string(c.synthetic_side)},
      {"synthetic_train_per_class", std::to_string(c.synthetic_train_per_class)},
      {"synthetic_test_per_class", std::to_string(c.synthetic_test_per_class)},
      {"synthetic_seed", std::to_string(c.synthetic_seed)},
      {"variants", JoinList(c.variants, dct::VariantName)},
      {"modes", JoinList(c.modes, dct::ResampleName)},
      {"quality", std::to_string(c.quality)},
      {"subsampling", data::SubsamplingName(c.subsampling)},
      {"normalize", Bool(c.normalize)},
      {"dequantize_after_resample", Bool(c.dequantize_after_resample)},
      {"arch", c.Arch()},
      {"base_lr", Num(h.base_lr)},
      {"lr_decay", Num(h.decay)},
      {"decay_every", std::to_string(h.decay_every)},
      {"batch_size", std::to_string(h.batch_size)},
      {"epochs", std::to_string(h.epochs)},
      {"beta1", Num(h.beta1)},
      {"beta2", Num(h.beta2)},
      {"adam_eps", Num(h.eps)},
      {"seed", std::to_string(h.seed)},
      {"eval_each_epoch", Bool(c.eval_each_epoch)},
      {"bench_repetitions", std::to_string(c.bench_repetitions)},
      {"output_dir", c.output_dir.string()},
      {"corpora_dir", c.CorporaDir().string()},
      {"reuse_corpora", Bool(c.reuse_corpora)},
  });
}

}  // namespace dctcomp::harness
