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

#include "cli/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "figlang/util/io.h"

namespace figlang::cli {
namespace {

std::string ParseValue(std::string_view raw, std::size_t line_no) {
  const std::string where = "config line " + std::to_string(line_no);
  std::string v = Trim(raw);
  if (v.empty() || v.front() != '"') {
    const auto hash = v.find('#');
    if (hash != std::string::npos) v = Trim(v.substr(0, hash));
    return v;
  }
  std::string out;
  std::size_t i = 1;
  for (; i < v.size(); ++i) {
    const char c = v[i];
    if (c == '"') break;
    if (c == '\\') {
      if (++i >= v.size()) throw UsageError(where + ": dangling escape");
      switch (v[i]) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: throw UsageError(where + ": unknown escape \\" + std::string(1, v[i]));
      }
      continue;
    }
    out += c;
  }
  if (i >= v.size()) throw UsageError(where + ": unterminated string");
  const std::string rest = Trim(std::string_view(v).substr(i + 1));
  if (!rest.empty() && rest.front() != '#') throw UsageError(where + ": text after closing quote");
  return out;
}

std::string Quote(const std::string &s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

bool IsNumber(const std::string &s) {
  try {
    std::size_t used = 0;
    std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception &) {
    return false;
  }
}

bool Known(const std::vector<OptionSpec> &specs, const std::string &key) {
  return std::any_of(specs.begin(), specs.end(), [&](const OptionSpec &s) { return s.key == key; });
}

}  // namespace

std::string FlagName(std::string_view key) {
  std::string out(key);
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

std::string EnvName(std::string_view key) {
  std::string out = "FIGLANG_";
  for (const char c : key) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

KeyValues ParseConfigText(std::string_view text, std::string_view command, const std::vector<OptionSpec> &specs) {
  KeyValues top;
  KeyValues own;
  std::string section;
  std::size_t line_no = 0;
  for (const auto &raw_line : SplitLines(text)) {
    ++line_no;
    const std::string line = Trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string::npos) throw UsageError("config line " + std::to_string(line_no) + ": bad section");
      section = Trim(std::string_view(line).substr(1, close - 1));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = Trim(std::string_view(line).substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    const std::string value = ParseValue(std::string_view(line).substr(eq + 1), line_no);
    if (section.empty()) {
      if (!top.emplace(key, value).second) throw UsageError("config: duplicate key '" + key + "'");
    } else if (section == command) {
      if (!Known(specs, key)) {
        throw UsageError("config: unknown key '" + key + "' in [" + section + "]");
      }
      if (!own.emplace(key, value).second) throw UsageError("config: duplicate key '" + key + "'");
    }
  }
  KeyValues out;
  for (const auto &[k, v] : top) {
    if (Known(specs, k)) out[k] = v;
  }
  for (const auto &[k, v] : own) out[k] = v;
  return out;
}

RunConfig::RunConfig(std::string command, std::vector<OptionSpec> specs)
    : command_(std::move(command)), specs_(std::move(specs)) {
  for (const auto &s : specs_) Set(s.key, s.default_value, "default");
}

void RunConfig::Set(const std::string &key, const std::string &value, const char *source) {
  Spec(key);
  values_[key] = value;
  sources_[key] = source;
}

void RunConfig::ApplyFile(const KeyValues &values) {
  for (const auto &[k, v] : values) Set(k, v, "file");
}

void RunConfig::ApplyEnvironment(const EnvLookup &lookup) {
  for (const auto &s : specs_) {
    if (const auto v = lookup(EnvName(s.key))) Set(s.key, *v, "env");
  }
}

void RunConfig::ApplyFlags(const KeyValues &values) {
  for (const auto &[k, v] : values) Set(k, v, "flag");
}

void RunConfig::CheckRequired() const {
  for (const auto &s : specs_) {
    const auto &v = values_.at(s.key);
    if (s.required && v.empty()) throw UsageError(command_ + ": --" + FlagName(s.key) + " is required");
    // Values must keep the type of their default.
    const auto &d = s.default_value;
    if (d.empty() || v.empty()) continue;
    std::int64_t i = 0;
    if (std::from_chars(d.data(), d.data() + d.size(), i).ptr == d.data() + d.size()) {
      GetInt(s.key);
    } else if (d == "true" || d == "false") {
      GetBool(s.key);
    } else if (IsNumber(d)) {
      GetDouble(s.key);
    }
  }
}

const OptionSpec &RunConfig::Spec(const std::string &key) const {
  for (const auto &s : specs_) {
    if (s.key == key) return s;
  }
  throw UsageError(command_ + ": unknown option '" + key + "'");
}

const std::string &RunConfig::Source(const std::string &key) const {
  Spec(key);
  return sources_.at(key);
}

bool RunConfig::Has(const std::string &key) const { return !Get(key).empty(); }

const std::string &RunConfig::Get(const std::string &key) const {
  Spec(key);
  return values_.at(key);
}

std::int64_t RunConfig::GetInt(const std::string &key) const {
  const auto &v = Get(key);
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw UsageError(command_ + ": --" + FlagName(key) + " expects an integer, got '" + v + "'");
  }
  return out;
}

std::uint64_t RunConfig::GetUnsigned(const std::string &key) const {
  const auto v = GetInt(key);
  if (v < 0) throw UsageError(command_ + ": --" + FlagName(key) + " must not be negative");
  return static_cast<std::uint64_t>(v);
}

double RunConfig::GetDouble(const std::string &key) const {
  const auto &v = Get(key);
  try {
    std::size_t used = 0;
    const double out = std::stod(v, &used);
    if (used == v.size()) return out;
  } catch (const std::exception &) {
  }
  throw UsageError(command_ + ": --" + FlagName(key) + " expects a number, got '" + v + "'");
}

bool RunConfig::GetBool(const std::string &key) const {
  const auto v = ToLower(Get(key));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off" || v.empty()) return false;
  throw UsageError(command_ + ": --" + FlagName(key) + " expects true or false, got '" + v + "'");
}

std::vector<std::string> RunConfig::GetList(const std::string &key) const {
  std::vector<std::string> out;
  const auto &v = Get(key);
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = v.find(',', start);
    const auto end = comma == std::string::npos ? v.size() : comma;
    auto item = Trim(std::string_view(v).substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = end + 1;
  }
  return out;
}

std::string RunConfig::Render() const {
  std::string out = "[" + command_ + "]\n";
  for (const auto &s : specs_) out += s.key + " = " + Quote(values_.at(s.key)) + "\n";
  return out;
}

std::string RunConfig::Hash() const { return Sha256Hex(Render()); }

std::optional<std::string> ProcessEnv(const std::string &name) {
  if (const char *v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

}  // namespace figlang::cli
