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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "dctcomp/data/images.h"
#include "dctcomp/harness/config.h"
#include "dctcomp/jpeg/tables.h"
#include "dctcomp/harness/experiment.h"
#include "dctcomp/harness/report.h"
#include "dctcomp/kvfile.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dctcomp::harness {
namespace {

namespace fs = std::filesystem;
using testing::ThrownCode;

fs::path ScratchDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() /
                     ("dctcomp_harness_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentConfig TinyConfig(const fs::path& out) {
  ExperimentConfig cfg;
  cfg.dataset_kind = DatasetKind::kSynthetic;
  cfg.synthetic_classes = 2;
  cfg.synthetic_side = 32;
  cfg.synthetic_train_per_class = 24;
  cfg.synthetic_test_per_class = 8;
  cfg.arch = "c8,p,c8,g";
  cfg.hyper.epochs = 2;
  cfg.hyper.batch_size = 16;
  cfg.bench_repetitions = 5;
  cfg.output_dir = out;
  return cfg;
}

bool SameDouble(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

void ExpectSameReport(const RunReport& a, const RunReport& b) {
  EXPECT_EQ(a.config_echo, b.config_echo);
  EXPECT_EQ(a.environment, b.environment);
  EXPECT_EQ(a.timing_trend, b.timing_trend);
  EXPECT_EQ(a.accuracy_trend, b.accuracy_trend);
  EXPECT_EQ(a.notes, b.notes);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (size_t i = 0; i < a.cells.size(); ++i) {
    const CellReport& x = a.cells[i];
    const CellReport& y = b.cells[i];
    EXPECT_EQ(x.name, y.name);
    EXPECT_EQ(x.variant, y.variant);
    EXPECT_EQ(x.mode, y.mode);
    EXPECT_EQ(x.completed, y.completed);
    EXPECT_EQ(x.error, y.error);
    EXPECT_TRUE(SameDouble(x.accuracy_pct, y.accuracy_pct));
    EXPECT_EQ(x.epoch_seconds.mean, y.epoch_seconds.mean);
    EXPECT_EQ(x.epoch_seconds.stddev, y.epoch_seconds.stddev);
    EXPECT_EQ(x.forward_seconds.mean, y.forward_seconds.mean);
    EXPECT_EQ(x.forward_seconds.stddev, y.forward_seconds.stddev);
    EXPECT_EQ(x.checkpoint, y.checkpoint);
    ASSERT_EQ(x.epochs.size(), y.epochs.size());
    for (size_t e = 0; e < x.epochs.size(); ++e) {
      const auto& m = x.epochs[e];
      const auto& n = y.epochs[e];
      EXPECT_EQ(m.epoch, n.epoch);
      EXPECT_EQ(m.lr, n.lr);
      EXPECT_EQ(m.mean_loss, n.mean_loss);
      EXPECT_EQ(m.train_accuracy, n.train_accuracy);
      EXPECT_TRUE(SameDouble(m.eval_accuracy, n.eval_accuracy));
      EXPECT_EQ(m.steps, n.steps);
      EXPECT_EQ(m.wall_seconds, n.wall_seconds);
      EXPECT_EQ(m.forward_seconds, n.forward_seconds);
      EXPECT_EQ(m.eval_seconds, n.eval_seconds);
    }
  }
  ASSERT_EQ(a.bench.has_value(), b.bench.has_value());
  if (a.bench) {
    EXPECT_EQ(a.bench->corpus, b.bench->corpus);
    EXPECT_EQ(a.bench->images, b.bench->images);
    EXPECT_EQ(a.bench->repetitions, b.bench->repetitions);
    EXPECT_EQ(a.bench->partial.mean, b.bench->partial.mean);
    EXPECT_EQ(a.bench->partial.stddev, b.bench->partial.stddev);
    EXPECT_EQ(a.bench->full.mean, b.bench->full.mean);
    EXPECT_EQ(a.bench->full.stddev, b.bench->full.stddev);
    EXPECT_EQ(a.bench->speedup, b.bench->speedup);
  }
}

int CountLines(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  int n = 0;
  for (std::string line; std::getline(in, line);) n += line.find(needle) != std::string::npos;
  return n;
}

void WriteFileBytes(const fs::path& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

// Procedural images in the CIFAR-10 binary layout, so the cifar10 dataset
// kind can run end to end without the real dataset.
void WriteCifarLayout(const fs::path& dir) {
  fs::create_directories(dir);
  auto write = [&](const std::string& name, uint64_t seed) {
    const auto set = data::MakeSyntheticImages(10, 3, 32, seed);
    std::vector<uint8_t> bytes;
    for (const auto& img : set.images) {
      bytes.push_back(static_cast<uint8_t>(img.label));
      for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < 32 * 32; ++i) bytes.push_back(img.pixels.pixels[3 * i + c]);
      }
    }
    WriteFileBytes(dir / name, bytes);
  };
  for (int b = 1; b <= 5; ++b) write("data_batch_" + std::to_string(b) + ".bin", b);
  write("test_batch.bin", 99);
}

TEST(DatasetKindTest, CifarLayoutRunsWithClassSubset) {
  const fs::path root = ScratchDir("cifar");
  WriteCifarLayout(root / "batches");
  ExperimentConfig cfg = TinyConfig(root / "run");
  cfg.dataset_kind = DatasetKind::kCifar10;
  cfg.dataset_path = root / "batches";
  cfg.classes = {0, 1};
  cfg.train_per_class = 12;
  cfg.test_per_class = 3;
  cfg.variants = {dct::Variant::kUnquantized};
  cfg.modes = {dct::Resample::kUpsample};
  const auto split = LoadDataset(cfg);
  EXPECT_EQ(split.train.images.size(), 24u);
  EXPECT_EQ(split.test.images.size(), 6u);
  EXPECT_EQ(split.train.class_names, (std::vector<std::string>{"airplane", "automobile"}));
  const RunReport r = RunExperiment(cfg);
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_TRUE(r.cells[0].completed) << r.cells[0].error;
  cfg.test_per_class = 4;  // only three per class exist
  EXPECT_EQ(ThrownCode([&] { LoadDataset(cfg); }), "ConfigInvalid");
  fs::remove_all(root);
}

TEST(DatasetKindTest, FolderTreeRunsAndCountsSkippedFiles) {
  const fs::path root = ScratchDir("folder");
  const auto set = data::MakeSyntheticImages(2, 4, 48, 5);
  for (const char* split : {"train", "test"}) {
    for (const char* cls : {"cat", "dog"}) fs::create_directories(root / "data" / split / cls);
  }
  for (size_t i = 0; i < set.images.size(); ++i) {
    const auto& img = set.images[i];
    const auto planes = RgbToYcbcrPlanes(img.pixels, jpeg::Subsampling::k420);
    const auto bytes = jpeg::EncodeJpeg(planes, jpeg::StandardQuantTables(90));
    const char* split = i < 6 ? "train" : "test";
    WriteFileBytes(root / "data" / split / (img.label ? "dog" : "cat") / ("i" + std::to_string(i) + ".jpg"), bytes);
  }
  WriteFileBytes(root / "data" / "train" / "cat" / "broken.jpg", {0xFF, 0xD8, 0xFF});
  ExperimentConfig cfg = TinyConfig(root / "run");
  cfg.dataset_kind = DatasetKind::kFolder;
  cfg.dataset_path = root / "data";
  cfg.image_side = 32;
  cfg.variants = {dct::Variant::kQuantized};
  cfg.modes = {dct::Resample::kDownsample};
  cfg.bench_repetitions = 0;
  const RunReport r = RunExperiment(cfg);
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_TRUE(r.cells[0].completed) << r.cells[0].error;
  EXPECT_EQ(r.notes.front(), "1 undecodable files skipped");
  cfg.dataset_path = root / "missing";
  EXPECT_EQ(ThrownCode([&] { RunExperiment(cfg); }), "ConfigInvalid");
  fs::remove_all(root);
}

TEST(ConfigTest, FormatParsesBackToTheSameConfig) {
  ExperimentConfig cfg;
  cfg.dataset_kind = DatasetKind::kCifar10;
  cfg.dataset_path = "/data/cifar";
  cfg.classes = {0, 1};
  cfg.train_per_class = 1000;
  cfg.variants = {dct::Variant::kUnquantized};
  cfg.modes = {dct::Resample::kUpsample};
  cfg.hyper.base_lr = 0.003;
  cfg.hyper.seed = 18446744073709551615ULL;
  cfg.subsampling = jpeg::Subsampling::k444;
  cfg.normalize = false;
  const std::string text = FormatConfig(cfg);
  EXPECT_EQ(FormatConfig(ParseConfig(text)), text);
  EXPECT_EQ(ParseConfig(text).hyper.seed, cfg.hyper.seed);
  EXPECT_NE(text.find("quality = 75"), std::string::npos);
}

TEST(ConfigTest, Errors) {
  EXPECT_EQ(ThrownCode([] { ParseConfig("colour = blue\n"); }), "ConfigInvalid");
  EXPECT_EQ(ThrownCode([] { ParseConfig("epochs = many\n"); }), "ConfigInvalid");
  EXPECT_EQ(ThrownCode([] { ParseConfig("modes = sideways\n"); }), "ConfigInvalid");
  EXPECT_EQ(ThrownCode([] { ParseConfig("variants = \n").Validate(); }), "ConfigInvalid");
  EXPECT_EQ(ThrownCode([] { ParseConfig("modes = upsample,upsample\n").Validate(); }),
            "ConfigInvalid");
  EXPECT_EQ(ThrownCode([] { ParseConfig("bench_repetitions = 1\n").Validate(); }), "ConfigInvalid");
  EXPECT_EQ(ThrownCode([] { ParseConfig("synthetic_side = 24\n").Validate(); }), "ConfigInvalid");
  EXPECT_EQ(ThrownCode([] {
              ParseConfig("dataset_kind = cifar10\ndataset_path = /nonexistent\n").Validate();
            }),
            "ConfigInvalid");
  EXPECT_EQ(ThrownCode([] { ParseConfig("batch_size = 0\n").Validate(); }), "ConfigInvalid");
  EXPECT_EQ(ThrownCode([] { ExperimentConfig().Validate(); }), "no error");
}

TEST(SummarizeTest, SampleStandardDeviation) {
  const MeanStd s = Summarize({2, 4, 4, 4, 5, 5, 7, 9});
  EXPECT_DOUBLE_EQ(s.mean, 5.0);
  EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(32.0 / 7.0));
  EXPECT_EQ(Summarize({3.0}).stddev, 0.0);
}

TEST(CellNameTest, TableRowLabels) {
  EXPECT_EQ(CellName(dct::Variant::kQuantized, dct::Resample::kDownsample), "Quantized (Downsampling)");
  EXPECT_EQ(CellName(dct::Variant::kUnquantized, dct::Resample::kUpsample), "Unquantized (Upsampling)");
}

class ExperimentTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    out_ = new fs::path(ScratchDir("grid"));
    report_ = new RunReport(RunExperiment(TinyConfig(*out_)));
  }
  static void TearDownTestSuite() {
    fs::remove_all(*out_);
    delete report_;
    delete out_;
  }
  static fs::path* out_;
  static RunReport* report_;
};
fs::path* ExperimentTest::out_ = nullptr;
RunReport* ExperimentTest::report_ = nullptr;

TEST_F(ExperimentTest, FourCellsInTableOrder) {
  const RunReport& r = *report_;
  ASSERT_EQ(r.cells.size(), 4u);
  EXPECT_EQ(r.cells[0].name, "Quantized (Downsampling)");
  EXPECT_EQ(r.cells[1].name, "Quantized (Upsampling)");
  EXPECT_EQ(r.cells[2].name, "Unquantized (Downsampling)");
  EXPECT_EQ(r.cells[3].name, "Unquantized (Upsampling)");
  EXPECT_TRUE(r.AllCompleted());
  for (const auto& c : r.cells) {
    EXPECT_GE(c.accuracy_pct, 0.0);
    EXPECT_LE(c.accuracy_pct, 100.0);
    EXPECT_GE(c.epoch_seconds.stddev, 0.0);
    EXPECT_EQ(c.epochs.size(), 2u);
    EXPECT_TRUE(fs::exists(c.checkpoint)) << c.checkpoint;
  }
  EXPECT_NE(r.timing_trend, "n/a");
  EXPECT_NE(r.accuracy_trend, "n/a");
  ASSERT_TRUE(r.bench.has_value());
  EXPECT_EQ(r.bench->images, 16u);
}

TEST_F(ExperimentTest, WritesEveryArtifact) {
  for (const char* f : {"report.csv", "report.json", "report.txt", "config.resolved.cfg",
                        "normalization.cfg"}) {
    EXPECT_TRUE(fs::exists(*out_ / f)) << f;
  }
  EXPECT_TRUE(fs::exists(*out_ / "corpora" / "quantized" / "train" / "manifest.tsv"));
  EXPECT_TRUE(fs::exists(*out_ / "corpora" / "unquantized" / "test" / "corpus.cfg"));
  const ExperimentConfig back = LoadConfig(*out_ / "config.resolved.cfg");
  EXPECT_EQ(FormatConfig(back), report_->config_echo);
}

TEST_F(ExperimentTest, TextTableHasHeaderAndFourRows) {
  const std::string text = ReadTextFile(*out_ / "report.txt");
  std::istringstream in(text);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "Type of Operation | Accuracy(%) | Inference Speed");
  int rows = 0;
  for (std::string line; std::getline(in, line) && !line.empty();) {
    if (line.rfind("---", 0) == 0) continue;
    ++rows;
    EXPECT_EQ(CountLines(line, " | "), 1) << line;
  }
  EXPECT_EQ(rows, 4);
}

TEST_F(ExperimentTest, CsvAndJsonRoundTrip) {
  ExpectSameReport(ParseReportCsv(ReportToCsv(*report_)), *report_);
  ExpectSameReport(ParseReportJson(ReportToJson(*report_)), *report_);
  ExpectSameReport(ReadReport(*out_), *report_);
}

TEST_F(ExperimentTest, SameSeedGivesIdenticalAccuracyRows) {
  const fs::path again = ScratchDir("again");
  const RunReport r = RunExperiment(TinyConfig(again));
  ASSERT_EQ(r.cells.size(), report_->cells.size());
  for (size_t i = 0; i < r.cells.size(); ++i) {
    EXPECT_EQ(r.cells[i].accuracy_pct, report_->cells[i].accuracy_pct);
    ASSERT_EQ(r.cells[i].epochs.size(), report_->cells[i].epochs.size());
    for (size_t e = 0; e < r.cells[i].epochs.size(); ++e) {
      EXPECT_EQ(r.cells[i].epochs[e].mean_loss, report_->cells[i].epochs[e].mean_loss);
      EXPECT_EQ(r.cells[i].epochs[e].train_accuracy, report_->cells[i].epochs[e].train_accuracy);
      EXPECT_EQ(r.cells[i].epochs[e].eval_accuracy, report_->cells[i].epochs[e].eval_accuracy);
    }
  }
  fs::remove_all(again);
}

TEST(ExperimentFailureTest, FailingCellIsRecordedAndOthersRun) {
  const fs::path out = ScratchDir("fail");
  ExperimentConfig cfg = TinyConfig(out);
  // Five poolings fit 32x32 upsampled inputs but not 16x16 downsampled ones.
  cfg.arch = "c4,p,p,p,p,p";
  cfg.hyper.epochs = 1;
  cfg.bench_repetitions = 0;
  const RunReport r = RunExperiment(cfg);
  ASSERT_EQ(r.cells.size(), 4u);
  EXPECT_FALSE(r.AllCompleted());
  EXPECT_FALSE(r.cells[0].completed);
  EXPECT_NE(r.cells[0].error.find("BadArchConfig"), std::string::npos);
  EXPECT_TRUE(r.cells[1].completed);
  EXPECT_TRUE(r.cells[3].completed);
  EXPECT_EQ(r.timing_trend, "n/a");
  const std::string text = ReportToText(r);
  EXPECT_NE(text.find("Quantized (Downsampling) | FAILED | -"), std::string::npos);
  ExpectSameReport(ParseReportCsv(ReportToCsv(r)), r);
  fs::remove_all(out);
}

TEST(ReportTest, EmptyCellPrintsFailed) {
  RunReport r;
  CellReport c;
  c.name = CellName(dct::Variant::kUnquantized, dct::Resample::kDownsample);
  c.variant = dct::Variant::kUnquantized;
  c.mode = dct::Resample::kDownsample;
  c.error = "EmptyDataset: nothing, with \"quotes\"\nand a newline";
  r.cells.push_back(c);
  r.notes = {"a, b"};
  const std::string text = ReportToText(r);
  EXPECT_EQ(text.rfind(kTableHeader, 0), 0u);
  EXPECT_NE(text.find("Unquantized (Downsampling) | FAILED | -"), std::string::npos);
  EXPECT_NE(text.find("EmptyDataset"), std::string::npos);
  ExpectSameReport(ParseReportCsv(ReportToCsv(r)), r);
  ExpectSameReport(ParseReportJson(ReportToJson(r)), r);
  EXPECT_EQ(ThrownCode([] { ParseReportCsv("bad,header\n"); }), "ConfigInvalid");
  EXPECT_EQ(ThrownCode([] { ParseReportJson("{"); }), "ConfigInvalid");
}

TEST(BenchmarkTest, PartialDecodeIsFaster) {
  const fs::path dir = ScratchDir("bench");
  const auto images = data::MakeSyntheticImages(2, 10, 64, 3);
  const auto corpus =
      data::GenerateVariants(images, dct::Variant::kQuantized, 75, jpeg::Subsampling::k420, dir);
  const DecodeBenchmark b = BenchmarkDecode(corpus, 5);
  EXPECT_EQ(b.images, 20u);
  EXPECT_EQ(b.repetitions, 5);
  EXPECT_LT(b.partial.mean, b.full.mean);
  EXPECT_GT(b.partial.stddev, 0.0);
  EXPECT_GT(b.full.stddev, 0.0);
  EXPECT_DOUBLE_EQ(b.speedup, b.full.mean / b.partial.mean);
  EXPECT_EQ(ThrownCode([&] { BenchmarkDecode(corpus, 1); }), "ConfigInvalid");
  data::VariantCorpus empty = corpus;
  empty.entries.clear();
  EXPECT_EQ(ThrownCode([&] { BenchmarkDecode(empty, 5); }), "EmptyCorpus");
  fs::remove_all(dir);
}

}  // namespace
}  // namespace dctcomp::harness
