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

#include "dctcomp/kvfile.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "dctcomp/error.h"

namespace dctcomp {

namespace {

std::string Trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void BadValue(const std::string& key, const std::string& value, const char* kind) {
  throw Error(ErrorCode::kConfigInvalid, key + ": '" + value + "' is not " + kind);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> ParseKeyValues(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    const std::string where = "line " + std::to_string(number);
    if (eq == std::string::npos) throw Error(ErrorCode::kConfigInvalid, where + ": expected key = value");
    std::string key = Trim(line.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::kConfigInvalid, where + ": empty key");
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::kConfigInvalid, where + ": repeated key '" + key + "'");
    }
    out.emplace_back(std::move(key), Trim(line.substr(eq + 1)));
  }
  return out;
}

std::string FormatKeyValues(const std::vector<std::pair<std::string, std::string>>& entries) {
  std::string out;
  for (const auto& [k, v] : entries) out += k + " = " + v + "\n";
  return out;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
}

int ParseIntValue(const std::string& key, const std::string& value) {
  int v = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (value.empty() || ec != std::errc() || ptr != end) BadValue(key, value, "an integer");
  return v;
}

double ParseDoubleValue(const std::string& key, const std::string& value) {
  double v = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (value.empty() || ec != std::errc() || ptr != end) BadValue(key, value, "a number");
  return v;
}

bool ParseBoolValue(const std::string& key, const std::string& value) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  BadValue(key, value, "a boolean");
}

}  // namespace dctcomp
