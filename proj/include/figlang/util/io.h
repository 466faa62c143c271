// Copyright 2026 The Figlang Authors.
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

#ifndef FIGLANG_UTIL_IO_H_
#define FIGLANG_UTIL_IO_H_

#include <chrono>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace figlang {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::filesystem::path &path);

// Writes through a temporary sibling and renames it into place.
void WriteFileAtomic(const std::filesystem::path &path, std::string_view data);

// Non-empty lines of a file, without trailing '\r'.
std::vector<std::string> ReadLines(const std::filesystem::path &path);
// Lines of `text` without terminators; a trailing newline adds no line.
std::vector<std::string> SplitLines(std::string_view text);

std::string Sha256Hex(std::string_view data);
std::string Sha256File(const std::filesystem::path &path);

using UtcTime = std::chrono::sys_seconds;

// Parses "YYYY-MM-DDTHH:MM:SSZ" (fractional seconds and numeric offsets
// accepted) or a bare "YYYY-MM-DD" date. Throws std::invalid_argument.
UtcTime ParseUtc(std::string_view text);
std::string FormatUtc(UtcTime t);

std::string Trim(std::string_view s);
std::vector<std::string> SplitWhitespace(std::string_view s);
std::string ToLower(std::string_view s);

// RFC 4180 CSV: quoted fields may hold commas, quotes and newlines.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);
std::string CsvEscape(std::string_view field);

// printf("%.*f") formatting.
std::string FormatFixed(double value, int decimals);

}  // namespace figlang

#endif  // FIGLANG_UTIL_IO_H_
