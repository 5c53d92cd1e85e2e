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

#include "dctcomp/harness/report.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "dctcomp/error.h"
#include "dctcomp/kvfile.h"
#include <nlohmann/json.hpp>

namespace dctcomp::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kColumns = {
    "record",         "name",           "variant",       "mode",         "status",
    "accuracy_pct",   "epoch_mean_s",   "epoch_std_s",   "forward_mean_s", "forward_std_s",
    "epoch",          "lr",             "mean_loss",     "train_accuracy", "eval_accuracy",
    "steps",          "wall_s",         "forward_s",     "eval_s",       "images",
    "repetitions",    "partial_mean_s", "partial_std_s", "full_mean_s",  "full_std_s",
    "speedup",        "path",           "note"};

std::string Num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double ToDouble(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  return ParseDoubleValue("report", s);
}

std::string Quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// RFC 4180 records; quoted fields may span lines.
std::vector<std::vector<std::string>> ReadCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::kConfigInvalid, "unterminated quoted CSV field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string PlusMinus(const MeanStd& s, int digits) {
  return Fixed(s.mean, digits) + " ± " + Fixed(s.stddev, digits);
}

json MeanStdJson(const MeanStd& s) { return {{"mean", s.mean}, {"std", s.stddev}}; }

MeanStd MeanStdFrom(const json& j) { return {j.at("mean").get<double>(), j.at("std").get<double>()}; }

double JsonDouble(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string ReportToCsv(const RunReport& r) {
  std::string out;
  auto emit = [&](std::map<std::string, std::string> fields) {
    for (size_t i = 0; i < kColumns.size(); ++i) {
      if (i) out += ',';
      out += Quote(fields[kColumns[i]]);
    }
    out += '\n';
  };
  for (size_t i = 0; i < kColumns.size(); ++i) out += (i ? "," : "") + kColumns[i];
  out += '\n';
  emit({{"record", "meta"}, {"name", "config"}, {"note", r.config_echo}});
  emit({{"record", "meta"}, {"name", "environment"}, {"note", r.environment}});
  emit({{"record", "meta"}, {"name", "timing_trend"}, {"note", r.timing_trend}});
  emit({{"record", "meta"}, {"name", "accuracy_trend"}, {"note", r.accuracy_trend}});
  for (const auto& n : r.notes) emit({{"record", "meta"}, {"name", "note"}, {"note", n}});
  for (const auto& c : r.cells) {
    emit({{"record", "cell"},
          {"name", c.name},
          {"variant", dct::VariantName(c.variant)},
          {"mode", dct::ResampleName(c.mode)},
          {"status", c.completed ? "completed" : "failed"},
          {"accuracy_pct", Num(c.accuracy_pct)},
          {"epoch_mean_s", Num(c.epoch_seconds.mean)},
          {"epoch_std_s", Num(c.epoch_seconds.stddev)},
          {"forward_mean_s", Num(c.forward_seconds.mean)},
          {"forward_std_s", Num(c.forward_seconds.stddev)},
          {"path", c.checkpoint},
          {"note", c.error}});
    for (const auto& m : c.epochs) {
      emit({{"record", "epoch"},
            {"name", c.name},
            {"epoch", std::to_string(m.epoch)},
            {"lr", Num(m.lr)},
            {"mean_loss", Num(m.mean_loss)},
            {"train_accuracy", Num(m.train_accuracy)},
            {"eval_accuracy", Num(m.eval_accuracy)},
            {"steps", std::to_string(m.steps)},
            {"wall_s", Num(m.wall_seconds)},
            {"forward_s", Num(m.forward_seconds)},
            {"eval_s", Num(m.eval_seconds)}});
    }
  }
  if (r.bench) {
    const auto& b = *r.bench;
    emit({{"record", "bench"},
          {"name", "decode"},
          {"images", std::to_string(b.images)},
          {"repetitions", std::to_string(b.repetitions)},
          {"partial_mean_s", Num(b.partial.mean)},
          {"partial_std_s", Num(b.partial.stddev)},
          {"full_mean_s", Num(b.full.mean)},
          {"full_std_s", Num(b.full.stddev)},
          {"speedup", Num(b.speedup)},
          {"path", b.corpus}});
  }
  return out;
}

RunReport ParseReportCsv(const std::string& text) {
  const auto rows = ReadCsv(text);
  if (rows.empty() || rows[0] != kColumns) {
    throw Error(ErrorCode::kConfigInvalid, "report CSV header does not match");
  }
  RunReport r;
  for (size_t ri = 1; ri < rows.size(); ++ri) {
    if (rows[ri].size() != kColumns.size()) {
      throw Error(ErrorCode::kConfigInvalid, "report CSV row " + std::to_string(ri) + " has " +
                                                 std::to_string(rows[ri].size()) + " fields");
    }
    std::map<std::string, std::string> f;
    for (size_t i = 0; i < kColumns.size(); ++i) f[kColumns[i]] = rows[ri][i];
    const std::string& record = f["record"];
    if (record == "meta") {
      const std::string& key = f["name"];
      if (key == "config") r.config_echo = f["note"];
      else if (key == "environment") r.environment = f["note"];
      else if (key == "timing_trend") r.timing_trend = f["note"];
      else if (key == "accuracy_trend") r.accuracy_trend = f["note"];
      else if (key == "note") r.notes.push_back(f["note"]);
      else throw Error(ErrorCode::kConfigInvalid, "unknown report meta '" + key + "'");
    } else if (record == "cell") {
      CellReport c;
      c.name = f["name"];
      c.variant = dct::ParseVariant(f["variant"]);
      c.mode = dct::ParseResample(f["mode"]);
      c.completed = f["status"] == "completed";
      c.accuracy_pct = ToDouble(f["accuracy_pct"]);
      c.epoch_seconds = {ToDouble(f["epoch_mean_s"]), ToDouble(f["epoch_std_s"])};
      c.forward_seconds = {ToDouble(f["forward_mean_s"]), ToDouble(f["forward_std_s"])};
      c.checkpoint = f["path"];
      c.error = f["note"];
      r.cells.push_back(std::move(c));
    } else if (record == "epoch") {
      if (r.cells.empty() || r.cells.back().name != f["name"]) {
        throw Error(ErrorCode::kConfigInvalid, "epoch row without its cell");
      }
      nn::EpochMetrics m;
      m.epoch = ParseIntValue("epoch", f["epoch"]);
      m.lr = ToDouble(f["lr"]);
      m.mean_loss = ToDouble(f["mean_loss"]);
      m.train_accuracy = ToDouble(f["train_accuracy"]);
      m.eval_accuracy = ToDouble(f["eval_accuracy"]);
      m.steps = std::stoll(f["steps"]);
      m.wall_seconds = ToDouble(f["wall_s"]);
      m.forward_seconds = ToDouble(f["forward_s"]);
      m.eval_seconds = ToDouble(f["eval_s"]);
      r.cells.back().epochs.push_back(m);
    } else if (record == "bench") {
      DecodeBenchmark b;
      b.corpus = f["path"];
      b.images = std::stoull(f["images"]);
      b.repetitions = ParseIntValue("repetitions", f["repetitions"]);
      b.partial = {ToDouble(f["partial_mean_s"]), ToDouble(f["partial_std_s"])};
      b.full = {ToDouble(f["full_mean_s"]), ToDouble(f["full_std_s"])};
      b.speedup = ToDouble(f["speedup"]);
      r.bench = b;
    } else {
      throw Error(ErrorCode::kConfigInvalid, "unknown report record '" + record + "'");
    }
  }
  return r;
}

std::string ReportToJson(const RunReport& r) {
  json j;
  j["config"] = r.config_echo;
  j["environment"] = r.environment;
  j["timing_trend"] = r.timing_trend;
  j["accuracy_trend"] = r.accuracy_trend;
  j["notes"] = r.notes;
  j["cells"] = json::array();
  for (const auto& c : r.cells) {
    json cell = {{"name", c.name},
                 {"variant", dct::VariantName(c.variant)},
                 {"mode", dct::ResampleName(c.mode)},
                 {"completed", c.completed},
                 {"error", c.error},
                 {"accuracy_pct", c.accuracy_pct},
                 {"epoch_seconds", MeanStdJson(c.epoch_seconds)},
                 {"forward_seconds", MeanStdJson(c.forward_seconds)},
                 {"checkpoint", c.checkpoint},
                 {"epochs", json::array()}};
    for (const auto& m : c.epochs) {
      cell["epochs"].push_back({{"epoch", m.epoch},
                                {"lr", m.lr},
                                {"mean_loss", m.mean_loss},
                                {"train_accuracy", m.train_accuracy},
                                {"eval_accuracy", std::isnan(m.eval_accuracy) ? json(nullptr)
                                                                               : json(m.eval_accuracy)},
                                {"steps", m.steps},
                                {"wall_seconds", m.wall_seconds},
                                {"forward_seconds", m.forward_seconds},
                                {"eval_seconds", m.eval_seconds}});
    }
    j["cells"].push_back(std::move(cell));
  }
  if (r.bench) {
    const auto& b = *r.bench;
    j["decode_benchmark"] = {{"corpus", b.corpus},
                             {"images", b.images},
                             {"repetitions", b.repetitions},
                             {"partial_seconds_per_image", MeanStdJson(b.partial)},
                             {"full_seconds_per_image", MeanStdJson(b.full)},
                             {"speedup", b.speedup}};
  }
  return j.dump(2) + "\n";
}

RunReport ParseReportJson(const std::string& text) {
  RunReport r;
  try {
    const json j = json::parse(text);
    r.config_echo = j.at("config").get<std::string>();
    r.environment = j.at("environment").get<std::string>();
    r.timing_trend = j.at("timing_trend").get<std::string>();
    r.accuracy_trend = j.at("accuracy_trend").get<std::string>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& jc : j.at("cells")) {
      CellReport c;
      c.name = jc.at("name").get<std::string>();
      c.variant = dct::ParseVariant(jc.at("variant").get<std::string>());
      c.mode = dct::ParseResample(jc.at("mode").get<std::string>());
      c.completed = jc.at("completed").get<bool>();
      c.error = jc.at("error").get<std::string>();
      c.accuracy_pct = jc.at("accuracy_pct").get<double>();
      c.epoch_seconds = MeanStdFrom(jc.at("epoch_seconds"));
      c.forward_seconds = MeanStdFrom(jc.at("forward_seconds"));
      c.checkpoint = jc.at("checkpoint").get<std::string>();
      for (const auto& je : jc.at("epochs")) {
        nn::EpochMetrics m;
        m.epoch = je.at("epoch").get<int>();
        m.lr = je.at("lr").get<double>();
        m.mean_loss = je.at("mean_loss").get<double>();
        m.train_accuracy = je.at("train_accuracy").get<double>();
        m.eval_accuracy = JsonDouble(je.at("eval_accuracy"));
        m.steps = je.at("steps").get<int64_t>();
        m.wall_seconds = je.at("wall_seconds").get<double>();
        m.forward_seconds = je.at("forward_seconds").get<double>();
        m.eval_seconds = je.at("eval_seconds").get<double>();
        c.epochs.push_back(m);
      }
      r.cells.push_back(std::move(c));
    }
    if (j.contains("decode_benchmark")) {
      const auto& jb = j.at("decode_benchmark");
      DecodeBenchmark b;
      b.corpus = jb.at("corpus").get<std::string>();
      b.images = jb.at("images").get<size_t>();
      b.repetitions = jb.at("repetitions").get<int>();
      b.partial = MeanStdFrom(jb.at("partial_seconds_per_image"));
      b.full = MeanStdFrom(jb.at("full_seconds_per_image"));
      b.speedup = jb.at("speedup").get<double>();
      r.bench = b;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigInvalid, std::string("report JSON: ") + e.what());
  }
  return r;
}

std::string ReportToText(const RunReport& r) {
  std::string out = std::string(kTableHeader) + "\n";
  out += "--- | --- | ---\n";
  for (const auto& c : r.cells) {
    if (c.completed) {
      out += c.name + " | " + Fixed(c.accuracy_pct, 2) + " | " + PlusMinus(c.epoch_seconds, 2) + "\n";
    } else {
      out += c.name + " | FAILED | -\n";
    }
  }
  out += "\nInference Speed is the mean ± sample standard deviation of one training epoch's wall\n"
         "time in seconds, data streaming, forward and backward included.\n";
  out += "\nForward passes only (seconds per epoch):\n";
  for (const auto& c : r.cells) {
    if (c.completed) out += "  " + c.name + ": " + PlusMinus(c.forward_seconds, 3) + "\n";
  }
  bool failed = false;
  for (const auto& c : r.cells) {
    if (!c.completed) {
      if (!failed) out += "\nFailures:\n";
      failed = true;
      out += "  " + c.name + ": " + c.error + "\n";
    }
  }
  out += "\nTiming order (downsample faster than upsample): " + r.timing_trend + "\n";
  out += "Accuracy trend (upsample >= downsample, variants within 3 points): " + r.accuracy_trend + "\n";
  if (r.bench) {
    const auto& b = *r.bench;
    out += "\nDecode benchmark, " + std::to_string(b.images) + " images x " +
           std::to_string(b.repetitions) + " repetitions (ms per image):\n";
    out += "  partial (coefficients): " + Fixed(1e3 * b.partial.mean, 4) + " ± " +
           Fixed(1e3 * b.partial.stddev, 4) + "\n";
    out += "  full (pixels):          " + Fixed(1e3 * b.full.mean, 4) + " ± " +
           Fixed(1e3 * b.full.stddev, 4) + "\n";
    out += "  full / partial:         " + Fixed(b.speedup, 2) + "\n";
  }
  if (!r.notes.empty()) {
    out += "\nNotes:\n";
    for (const auto& n : r.notes) out += "  " + n + "\n";
  }
  out += "\nEnvironment: " + r.environment + "\n";
  return out;
}

void WriteReport(const RunReport& report, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  WriteTextFile(dir / "report.csv", ReportToCsv(report));
  WriteTextFile(dir / "report.json", ReportToJson(report));
  WriteTextFile(dir / "report.txt", ReportToText(report));
}

RunReport ReadReport(const fs::path& dir) {
  if (fs::exists(dir / "report.json")) return ParseReportJson(ReadTextFile(dir / "report.json"));
  return ParseReportCsv(ReadTextFile(dir / "report.csv"));
}

}  // namespace dctcomp::harness
