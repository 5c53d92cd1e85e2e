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

// Report serialization: report.csv, report.json and report.txt.
#ifndef DCTCOMP_HARNESS_REPORT_H_
#define DCTCOMP_HARNESS_REPORT_H_

#include <filesystem>
#include <string>

#include "dctcomp/harness/experiment.h"

namespace dctcomp::harness {

inline constexpr char kTableHeader[] = "Type of Operation | Accuracy(%) | Inference Speed";

// One row per cell, epoch, benchmark and metadata item. Numbers are printed
// with full precision so ParseReportCsv restores the report exactly.
std::string ReportToCsv(const RunReport& report);
RunReport ParseReportCsv(const std::string& text);

std::string ReportToJson(const RunReport& report);
RunReport ParseReportJson(const std::string& text);

// The results table followed by timing detail, trend flags and notes.
std::string ReportToText(const RunReport& report);

// Writes report.csv, report.json and report.txt into `dir`. kIoFailure.
void WriteReport(const RunReport& report, const std::filesystem::path& dir);
// Reads report.json, or report.csv when no JSON file exists.
RunReport ReadReport(const std::filesystem::path& dir);

}  // namespace dctcomp::harness

#endif  // DCTCOMP_HARNESS_REPORT_H_
