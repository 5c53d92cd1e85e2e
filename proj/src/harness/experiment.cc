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

#include "dctcomp/harness/experiment.h"

#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include <sys/utsname.h>

#include "dctcomp/dct/full_decode.h"
#include "dctcomp/error.h"
#include "dctcomp/harness/report.h"
#include "dctcomp/kvfile.h"
#include "dctcomp/nn/checkpoint.h"
#include "dctcomp/nn/network.h"

namespace dctcomp::harness {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

int VariantIndex(dct::Variant v) { return v == dct::Variant::kQuantized ? 0 : 1; }

void Log(const Logger& log, const std::string& msg) {
  if (log) log(msg);
}

data::ImageSet Subset(const data::ImageSet& set, const std::vector<int>& classes, int per_class) {
  if (classes.empty() && per_class == 0) return set;
  std::vector<int> keep = classes;
  if (keep.empty()) {
    keep.resize(set.num_classes());
    std::iota(keep.begin(), keep.end(), 0);
  }
  data::ImageSet out = data::SelectClasses(set, keep, per_class);
  out.skipped = set.skipped;
  return out;
}

bool Matches(const data::VariantCorpus& c, dct::Variant variant, const ExperimentConfig& cfg,
             const data::ImageSet& images) {
  if (c.variant != variant || c.subsampling != cfg.subsampling) return false;
  if (variant == dct::Variant::kQuantized && c.quality != cfg.quality) return false;
  if (c.entries.size() != images.images.size() || c.num_classes != images.num_classes()) return false;
  if (c.width != images.images[0].pixels.width || c.height != images.images[0].pixels.height) {
    return false;
  }
  for (size_t i = 0; i < c.entries.size(); ++i) {
    if (c.entries[i].label != images.images[i].label) return false;
  }
  return true;
}

data::VariantCorpus ObtainCorpus(const ExperimentConfig& cfg, dct::Variant variant,
                                 const data::ImageSet& images, const fs::path& dir,
                                 const Logger& log) {
  if (cfg.reuse_corpora) {
    try {
      data::VariantCorpus existing = data::LoadCorpus(dir);
      if (Matches(existing, variant, cfg, images)) {
        Log(log, "reusing corpus " + dir.string());
        return existing;
      }
    } catch (const Error&) {
      // Fall through and regenerate.
    }
  }
  Log(log, "encoding " + std::to_string(images.images.size()) + " images into " + dir.string());
  return data::GenerateVariants(images, variant, cfg.quality, cfg.subsampling, dir);
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

CellReport RunCell(const ExperimentConfig& cfg, const PreparedCorpora& corpora, int num_classes,
                   dct::Variant variant, dct::Resample mode, const Logger& log) {
  CellReport cell;
  cell.name = CellName(variant, mode);
  cell.variant = variant;
  cell.mode = mode;
  try {
    data::StreamOptions options;
    options.resample = mode;
    options.dequantize_after_resample = cfg.dequantize_after_resample;
    options.normalization = corpora.normalization;
    data::CorpusSource train(*corpora.train[VariantIndex(variant)], options);
    data::CorpusSource test(*corpora.test[VariantIndex(variant)], options);
    auto net = nn::Network<float>::Build(train.shape(), num_classes, cfg.Arch(), cfg.hyper.seed);
    Log(log, cell.name + ": input " + train.shape().ToString() + ", " +
                 std::to_string(net.ParameterCount()) + " parameters");
    const nn::TrainResult result =
        nn::Train(net, train, cfg.eval_each_epoch ? &test : nullptr, cfg.hyper,
                  [&](const nn::EpochMetrics& m) {
                    std::string line = cell.name + " epoch " + std::to_string(m.epoch + 1) + "/" +
                                       std::to_string(cfg.hyper.epochs) + " loss " +
                                       Fixed(m.mean_loss, 4) + " train " +
                                       Fixed(100 * m.train_accuracy, 2) + "%";
                    if (!std::isnan(m.eval_accuracy)) line += " test " + Fixed(100 * m.eval_accuracy, 2) + "%";
                    Log(log, line + " " + Fixed(m.wall_seconds, 2) + "s");
                  });
    cell.epochs = result.epochs;
    const double accuracy = cfg.eval_each_epoch
                                ? result.epochs.back().eval_accuracy
                                : nn::Evaluate(net, test, cfg.hyper.batch_size).accuracy;
    cell.accuracy_pct = 100.0 * accuracy;
    std::vector<double> wall, fwd;
    for (const auto& m : result.epochs) {
      wall.push_back(m.wall_seconds);
      fwd.push_back(m.forward_seconds);
    }
    cell.epoch_seconds = Summarize(wall);
    cell.forward_seconds = Summarize(fwd);
    const fs::path ckpt = cfg.output_dir / "checkpoints" /
                          (dct::VariantName(variant) + "_" + dct::ResampleName(mode) + ".ckpt");
    fs::create_directories(ckpt.parent_path());
    nn::SaveCheckpoint(net, ckpt);
    cell.checkpoint = ckpt.string();
    cell.completed = true;
  } catch (const Error& e) {
    cell.error = e.what();
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  if (!cell.completed) Log(log, cell.name + " FAILED: " + cell.error);
  return cell;
}

const CellReport* FindCell(const RunReport& r, dct::Variant v, dct::Resample m) {
  for (const auto& c : r.cells) {
    if (c.variant == v && c.mode == m && c.completed) return &c;
  }
  return nullptr;
}

void SetTrends(RunReport& r) {
  using dct::Resample;
  using dct::Variant;
  bool timing_seen = false, timing_ok = true;
  bool acc_seen = false, acc_ok = true;
  for (Variant v : {Variant::kQuantized, Variant::kUnquantized}) {
    const CellReport* down = FindCell(r, v, Resample::kDownsample);
    const CellReport* up = FindCell(r, v, Resample::kUpsample);
    if (down && up) {
      timing_seen = acc_seen = true;
      timing_ok &= down->epoch_seconds.mean < up->epoch_seconds.mean;
      acc_ok &= up->accuracy_pct >= down->accuracy_pct;
    }
  }
  for (Resample m : {Resample::kDownsample, Resample::kUpsample}) {
    const CellReport* q = FindCell(r, Variant::kQuantized, m);
    const CellReport* u = FindCell(r, Variant::kUnquantized, m);
    if (q && u) {
      acc_seen = true;
      acc_ok &= std::abs(q->accuracy_pct - u->accuracy_pct) <= 3.0;
    }
  }
  r.timing_trend = timing_seen ? (timing_ok ? "pass" : "warn") : "n/a";
  r.accuracy_trend = acc_seen ? (acc_ok ? "pass" : "warn") : "n/a";
}

}  // namespace

MeanStd Summarize(const std::vector<double>& values) {
  MeanStd s;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() < 2) return s;
  double ss = 0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return s;
}

bool RunReport::AllCompleted() const {
  for (const auto& c : cells) {
    if (!c.completed) return false;
  }
  return !cells.empty();
}

std::string CellName(dct::Variant v, dct::Resample r) {
  return std::string(v == dct::Variant::kQuantized ? "Quantized" : "Unquantized") +
         (r == dct::Resample::kDownsample ? " (Downsampling)" : " (Upsampling)");
}

data::TrainTestSplit LoadDataset(const ExperimentConfig& cfg, const Logger& log) {
  data::TrainTestSplit split;
  switch (cfg.dataset_kind) {
    case DatasetKind::kSynthetic:
      split.train = data::MakeSyntheticImages(cfg.synthetic_classes, cfg.synthetic_train_per_class,
                                              cfg.synthetic_side, cfg.synthetic_seed);
      split.test = data::MakeSyntheticImages(cfg.synthetic_classes, cfg.synthetic_test_per_class,
                                             cfg.synthetic_side, cfg.synthetic_seed + 1);
      break;
    case DatasetKind::kCifar10: {
      const data::TrainTestSplit full = data::LoadCifar10(cfg.dataset_path);
      split.train = Subset(full.train, cfg.classes, cfg.train_per_class);
      split.test = Subset(full.test, cfg.classes, cfg.test_per_class);
      break;
    }
    case DatasetKind::kFolder: {
      split.train = Subset(data::LoadJpegFolder(cfg.dataset_path / "train", cfg.image_side),
                           cfg.classes, cfg.train_per_class);
      split.test = Subset(data::LoadJpegFolder(cfg.dataset_path / "test", cfg.image_side),
                          cfg.classes, cfg.test_per_class);
      if (split.train.class_names != split.test.class_names) {
        throw Error(ErrorCode::kConfigInvalid, "train and test class folders differ");
      }
      break;
    }
  }
  if (split.train.images.empty() || split.test.images.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "dataset has no train or no test images");
  }
  Log(log, "dataset " + DatasetKindName(cfg.dataset_kind) + ": " +
               std::to_string(split.train.images.size()) + " train, " +
               std::to_string(split.test.images.size()) + " test, " +
               std::to_string(split.train.num_classes()) + " classes");
  for (const auto* set : {&split.train, &split.test}) {
    for (const auto& s : set->skipped) Log(log, "skipped " + s);
  }
  return split;
}

PreparedCorpora PrepareCorpora(const ExperimentConfig& cfg, const data::TrainTestSplit& split,
                               const Logger& log) {
  PreparedCorpora out;
  bool need[2] = {false, false};
  for (auto v : cfg.variants) need[VariantIndex(v)] = true;
  const fs::path root = cfg.CorporaDir();
  for (int i = 0; i < 2; ++i) {
    const auto variant = i == 0 ? dct::Variant::kQuantized : dct::Variant::kUnquantized;
    const fs::path dir = root / dct::VariantName(variant);
    if (need[i] || (i == 0 && cfg.normalize)) {
      out.train[i] = ObtainCorpus(cfg, variant, split.train, dir / "train", log);
    }
    if (need[i]) out.test[i] = ObtainCorpus(cfg, variant, split.test, dir / "test", log);
  }
  if (cfg.normalize) out.normalization = data::ComputeNormalization(*out.train[0]);
  return out;
}

RunReport RunExperiment(const ExperimentConfig& cfg, const Logger& log) {
  cfg.Validate();
  RunReport report;
  report.config_echo = FormatConfig(cfg);
  report.environment = EnvironmentNote();
  fs::create_directories(cfg.output_dir);
  WriteTextFile(cfg.output_dir / "config.resolved.cfg", report.config_echo);

  const data::TrainTestSplit split = LoadDataset(cfg, log);
  for (const auto* set : {&split.train, &split.test}) {
    if (!set->skipped.empty()) {
      report.notes.push_back(std::to_string(set->skipped.size()) + " undecodable files skipped");
    }
  }
  const PreparedCorpora corpora = PrepareCorpora(cfg, split, log);
  WriteTextFile(cfg.output_dir / "normalization.cfg", data::FormatNormalization(corpora.normalization));
  report.notes.push_back("subsampling " + data::SubsamplingName(cfg.subsampling) +
                         (cfg.normalize ? ", per-frequency normalization from the quantized training corpus"
                                        : ", no normalization"));

  for (auto v : cfg.variants) {
    for (auto m : cfg.modes) {
      report.cells.push_back(RunCell(cfg, corpora, split.train.num_classes(), v, m, log));
    }
  }
  SetTrends(report);

  if (cfg.bench_repetitions > 0) {
    const auto& corpus = *corpora.test[VariantIndex(cfg.variants.front())];
    try {
      report.bench = BenchmarkDecode(corpus, cfg.bench_repetitions);
      Log(log, "decode benchmark: full/partial = " + Fixed(report.bench->speedup, 2));
    } catch (const Error& e) {
      report.notes.push_back(std::string("decode benchmark failed: ") + e.what());
    }
  }
  WriteReport(report, cfg.output_dir);
  return report;
}

DecodeBenchmark BenchmarkDecode(const data::VariantCorpus& corpus, int repetitions) {
  if (corpus.entries.empty()) throw Error(ErrorCode::kEmptyCorpus, corpus.dir.string() + " is empty");
  if (repetitions < 5) {
    throw Error(ErrorCode::kConfigInvalid, "decode benchmark needs at least 5 repetitions");
  }
  std::vector<std::vector<uint8_t>> files;
  for (const auto& e : corpus.entries) {
    const std::string text = ReadTextFile(corpus.dir / e.path);
    files.emplace_back(text.begin(), text.end());
  }
  const double n = static_cast<double>(files.size());
  std::vector<double> partial, full;
  // Checksums keep the work observable.
  int64_t sink = 0;
  for (int rep = 0; rep < repetitions; ++rep) {
    auto start = Clock::now();
    for (const auto& f : files) {
      const auto grids = jpeg::DecodeCoefficients(jpeg::ParseJpeg(f));
      sink += grids[0].blocks[0][0];
    }
    partial.push_back(std::chrono::duration<double>(Clock::now() - start).count() / n);
    start = Clock::now();
    for (const auto& f : files) {
      const RgbImage rgb = dct::FullDecode(jpeg::ParseJpeg(f));
      sink += rgb.pixels[0];
    }
    full.push_back(std::chrono::duration<double>(Clock::now() - start).count() / n);
  }
  DecodeBenchmark b;
  b.corpus = corpus.dir.string();
  b.images = files.size();
  b.repetitions = repetitions;
  b.partial = Summarize(partial);
  b.full = Summarize(full);
  b.speedup = b.full.mean / b.partial.mean;
  if (sink == INT64_MIN) b.corpus += " ";
  return b;
}

std::string EnvironmentNote() {
  std::string note = "compiler ";
#if defined(__clang__)
  note += "clang " __clang_version__;
#elif defined(__GNUC__)
  note += "gcc " __VERSION__;
#endif
  utsname u{};
  if (uname(&u) == 0) note += "; " + std::string(u.sysname) + " " + u.release + " " + u.machine;
  note += "; " + std::to_string(std::thread::hardware_concurrency()) + " hardware threads";
  note += "; single-threaded training, cells run sequentially";
  return note;
}

}  // namespace dctcomp::harness
