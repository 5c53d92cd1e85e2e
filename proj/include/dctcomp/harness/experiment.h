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

// The 2x2 grid of (quantized | unquantized) x (downsample | upsample) cells,
// trained and timed sequentially, and the partial vs full decode benchmark.
#ifndef DCTCOMP_HARNESS_EXPERIMENT_H_
#define DCTCOMP_HARNESS_EXPERIMENT_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dctcomp/data/corpus.h"
#include "dctcomp/harness/config.h"
#include "dctcomp/nn/train.h"

namespace dctcomp::harness {

struct MeanStd {
  double mean = 0;
  // Sample standard deviation; 0 for fewer than two values.
  double stddev = 0;
};

MeanStd Summarize(const std::vector<double>& values);

struct CellReport {
  // Row label such as "Quantized (Downsampling)".
  std::string name;
  dct::Variant variant = dct::Variant::kQuantized;
  dct::Resample mode = dct::Resample::kUpsample;
  bool completed = false;
  std::string error;
  // Final test accuracy in percent.
  double accuracy_pct = 0;
  // Whole training epoch, streaming included.
  MeanStd epoch_seconds;
  // Forward passes only.
  MeanStd forward_seconds;
  std::vector<nn::EpochMetrics> epochs;
  std::string checkpoint;
};

struct DecodeBenchmark {
  std::string corpus;
  size_t images = 0;
  int repetitions = 0;
  // Seconds per image.
  MeanStd partial;
  MeanStd full;
  double speedup = 0;  // full mean / partial mean
};

struct RunReport {
  std::vector<CellReport> cells;
  std::optional<DecodeBenchmark> bench;
  std::string config_echo;
  std::string environment;
  // Observational flags: "pass", "warn" or "n/a".
  std::string timing_trend = "n/a";
  std::string accuracy_trend = "n/a";
  std::vector<std::string> notes;

  bool AllCompleted() const;
};

std::string CellName(dct::Variant v, dct::Resample r);

using Logger = std::function<void(const std::string&)>;

// Loads the dataset named by `cfg`, returning train and test image sets.
data::TrainTestSplit LoadDataset(const ExperimentConfig& cfg, const Logger& log = {});

struct PreparedCorpora {
  // Indexed by variant: [quantized, unquantized]; absent when not needed.
  std::optional<data::VariantCorpus> train[2];
  std::optional<data::VariantCorpus> test[2];
  data::Normalization normalization = data::Normalization::Identity();
};

// Writes the corpora every selected cell needs, plus the quantized training
// corpus when normalization statistics are required.
PreparedCorpora PrepareCorpora(const ExperimentConfig& cfg, const data::TrainTestSplit& split,
                               const Logger& log = {});

// Validates, prepares corpora, runs every selected cell in order and writes
// the resolved config, normalization statistics and one checkpoint per cell
// under output_dir. A failing cell is recorded and the rest still run.
// kConfigInvalid before any work if the config is invalid.
RunReport RunExperiment(const ExperimentConfig& cfg, const Logger& log = {});

// Per-image wall time of parse + coefficient decode versus parse + full pixel
// decode on the same in-memory files. kEmptyCorpus for no files;
// kConfigInvalid for fewer than 5 repetitions.
DecodeBenchmark BenchmarkDecode(const data::VariantCorpus& corpus, int repetitions);

// Run-time facts recorded with every report.
std::string EnvironmentNote();

}  // namespace dctcomp::harness

#endif  // DCTCOMP_HARNESS_EXPERIMENT_H_
