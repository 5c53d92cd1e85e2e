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

// Line-oriented `key = value` text with `#` comments, shared by corpus
// descriptors and experiment configs.
#ifndef DCTCOMP_KVFILE_H_
#define DCTCOMP_KVFILE_H_

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dctcomp {

// Ordered entries. kConfigInvalid on a line without '=' or with an empty or
// repeated key; the message carries the line number.
std::vector<std::pair<std::string, std::string>> ParseKeyValues(const std::string& text);

std::string FormatKeyValues(const std::vector<std::pair<std::string, std::string>>& entries);

// kIoFailure when the file cannot be read or written.
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

// Strict numeric conversions; kConfigInvalid names `key` on failure.
int ParseIntValue(const std::string& key, const std::string& value);
double ParseDoubleValue(const std::string& key, const std::string& value);
bool ParseBoolValue(const std::string& key, const std::string& value);

}  // namespace dctcomp

#endif  // DCTCOMP_KVFILE_H_
