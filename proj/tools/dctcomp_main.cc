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

// dctcomp command line: generate, train, experiment, bench-decode, report.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "dctcomp/data/corpus.h"
#include "dctcomp/error.h"
#include "dctcomp/harness/config.h"
#include "dctcomp/harness/experiment.h"
#include "dctcomp/harness/report.h"
#include "dctcomp/kvfile.h"

namespace {

using dctcomp::harness::ExperimentConfig;

constexpr int kExitIncomplete = 1;
constexpr int kExitError = 2;

// Config file plus one --flag per config key, applied in that order.
struct ConfigFlags {
  std::string config_file;
  std::map<std::string, std::string> values;

  void Register(CLI::App* app) {
    app->add_option("-c,--config", config_file, "key = value experiment config file")
        ->check(CLI::ExistingFile);
    for (const auto& [key, unused] : dctcomp::ParseKeyValues(dctcomp::harness::FormatConfig({}))) {
      std::string flag = key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      app->add_option("--" + flag, values[key], "config key " + key);
    }
  }

  ExperimentConfig Resolve(const CLI::App* app) const {
    ExperimentConfig cfg =
        config_file.empty() ? ExperimentConfig{} : dctcomp::harness::LoadConfig(config_file);
    for (const auto& [key, value] : values) {
      std::string flag = key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      if (app->count("--" + flag) > 0) dctcomp::harness::SetConfigValue(cfg, key, value);
    }
    return cfg;
  }
};

void LogLine(const std::string& s) { std::cerr << s << std::endl; }

int Finish(const dctcomp::harness::RunReport& report, const ExperimentConfig& cfg) {
  std::cout << dctcomp::harness::ReportToText(report);
  std::cout << "\nreport written to " << cfg.output_dir.string() << "\n";
  return report.AllCompleted() ? 0 : kExitIncomplete;
}

int RunGenerate(const ExperimentConfig& cfg) {
  cfg.Validate();
  const auto split = dctcomp::harness::LoadDataset(cfg, LogLine);
  const auto corpora = dctcomp::harness::PrepareCorpora(cfg, split, LogLine);
  for (int i = 0; i < 2; ++i) {
    for (const auto* c : {&corpora.train[i], &corpora.test[i]}) {
      if (*c) std::cout << (*c)->dir.string() << "\t" << (*c)->entries.size() << " images\n";
    }
  }
  std::filesystem::create_directories(cfg.output_dir);
  dctcomp::WriteTextFile(cfg.output_dir / "normalization.cfg",
                         dctcomp::data::FormatNormalization(corpora.normalization));
  dctcomp::WriteTextFile(cfg.output_dir / "config.resolved.cfg", dctcomp::harness::FormatConfig(cfg));
  return 0;
}

int RunBench(const std::string& corpus_dir, int repetitions, const std::string& json_out) {
  const auto corpus = dctcomp::data::LoadCorpus(corpus_dir);
  const auto b = dctcomp::harness::BenchmarkDecode(corpus, repetitions);
  std::printf("decode benchmark: %zu images x %d repetitions\n", b.images, b.repetitions);
  std::printf("  partial (coefficients): %.4f ± %.4f ms/image\n", 1e3 * b.partial.mean, 1e3 * b.partial.stddev);
  std::printf("  full (pixels):          %.4f ± %.4f ms/image\n", 1e3 * b.full.mean, 1e3 * b.full.stddev);
  std::printf("  full / partial:         %.2f\n", b.speedup);
  if (!json_out.empty()) {
    dctcomp::harness::RunReport r;
    r.bench = b;
    r.environment = dctcomp::harness::EnvironmentNote();
    dctcomp::WriteTextFile(json_out, dctcomp::harness::ReportToJson(r));
  }
  return b.partial.mean < b.full.mean ? 0 : kExitIncomplete;
}

int RunReportVerb(const std::string& dir, const std::string& format, bool rewrite) {
  const auto report = dctcomp::harness::ReadReport(dir);
  if (rewrite) dctcomp::harness::WriteReport(report, dir);
  if (format == "csv") {
    std::cout << dctcomp::harness::ReportToCsv(report);
  } else if (format == "json") {
    std::cout << dctcomp::harness::ReportToJson(report);
  } else {
    std::cout << dctcomp::harness::ReportToText(report);
  }
  return report.AllCompleted() ? 0 : kExitIncomplete;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DCT-domain image classification from partially decoded JPEG files"};
  app.require_subcommand(1);

  ConfigFlags gen_flags, train_flags, exp_flags;
  auto* gen = app.add_subcommand("generate", "Write the quantized and unquantized JPEG corpora");
  gen_flags.Register(gen);

  auto* train = app.add_subcommand("train", "Train and evaluate one (variant, mode) cell");
  train_flags.Register(train);
  std::string cell_variant = "unquantized", cell_mode = "upsample";
  train->add_option("--variant", cell_variant, "quantized or unquantized")
      ->check(CLI::IsMember({"quantized", "unquantized"}));
  train->add_option("--mode", cell_mode, "downsample or upsample")
      ->check(CLI::IsMember({"downsample", "upsample"}));

  auto* exp = app.add_subcommand("experiment", "Run every selected cell of the grid");
  exp_flags.Register(exp);

  auto* bench = app.add_subcommand("bench-decode", "Time partial against full decoding");
  std::string bench_corpus, bench_json;
  int bench_reps = 5;
  bench->add_option("--corpus", bench_corpus, "corpus directory")->required();
  bench->add_option("--repetitions", bench_reps, "timed passes, at least 5");
  bench->add_option("--json", bench_json, "also write the result as JSON");

  auto* report = app.add_subcommand("report", "Print or regenerate a run's report");
  std::string report_dir, report_format = "text";
  bool report_rewrite = false;
  report->add_option("--dir", report_dir, "run output directory")->required();
  report->add_option("--format", report_format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  report->add_flag("--rewrite", report_rewrite, "rewrite report.csv/json/txt from the stored report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return RunGenerate(gen_flags.Resolve(gen));
    if (train->parsed()) {
      ExperimentConfig cfg = train_flags.Resolve(train);
      cfg.variants = {dctcomp::dct::ParseVariant(cell_variant)};
      cfg.modes = {dctcomp::dct::ParseResample(cell_mode)};
      return Finish(dctcomp::harness::RunExperiment(cfg, LogLine), cfg);
    }
    if (exp->parsed()) {
      const ExperimentConfig cfg = exp_flags.Resolve(exp);
      return Finish(dctcomp::harness::RunExperiment(cfg, LogLine), cfg);
    }
    if (bench->parsed()) return RunBench(bench_corpus, bench_reps, bench_json);
    if (report->parsed()) return RunReportVerb(report_dir, report_format, report_rewrite);
  } catch (const dctcomp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
