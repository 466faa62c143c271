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

#ifndef FIGLANG_TOOLS_CLI_CONFIG_H_
#define FIGLANG_TOOLS_CLI_CONFIG_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace figlang::cli {

// Bad flags, config keys or values; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OptionRole { kValue, kInput, kOutput };

struct OptionSpec {
  // snake_case; the flag is --kebab-case, the variable FIGLANG_UPPER_CASE.
  std::string key;
  std::string default_value;
  std::string help;
  OptionRole role = OptionRole::kValue;
  bool required = false;
};

std::string FlagName(std::string_view key);
std::string EnvName(std::string_view key);

using KeyValues = std::map<std::string, std::string>;

// TOML-style key = value text. Values are bare words or double-quoted
// strings; '#' starts a comment. Top-level keys apply to every command,
// keys under [command] only to that command and override top-level ones.
// Unknown keys in the command's own section are usage errors; unknown
// top-level keys are ignored so one file can serve several commands.
KeyValues ParseConfigText(std::string_view text, std::string_view command, const std::vector<OptionSpec> &specs);

// Merged configuration: defaults < file < environment < flags.
class RunConfig {
 public:
  using EnvLookup = std::function<std::optional<std::string>(const std::string &)>;

  RunConfig(std::string command, std::vector<OptionSpec> specs);

  void ApplyFile(const KeyValues &values);
  void ApplyEnvironment(const EnvLookup &lookup);
  void ApplyFlags(const KeyValues &values);
  // Throws UsageError naming the first required key left empty or the
  // first value that does not parse like its default.
  void CheckRequired() const;

  const std::string &command() const { return command_; }
  const std::vector<OptionSpec> &specs() const { return specs_; }
  const KeyValues &values() const { return values_; }
  const std::string &Source(const std::string &key) const;

  bool Has(const std::string &key) const;
  const std::string &Get(const std::string &key) const;
  std::int64_t GetInt(const std::string &key) const;
  std::uint64_t GetUnsigned(const std::string &key) const;
  double GetDouble(const std::string &key) const;
  bool GetBool(const std::string &key) const;
  // Comma-separated, trimmed, empty entries dropped.
  std::vector<std::string> GetList(const std::string &key) const;

  // key = "value" lines in spec order; parseable by ParseConfigText.
  std::string Render() const;
  // SHA-256 of Render().
  std::string Hash() const;

 private:
  const OptionSpec &Spec(const std::string &key) const;
  void Set(const std::string &key, const std::string &value, const char *source);

  std::string command_;
  std::vector<OptionSpec> specs_;
  KeyValues values_;
  std::map<std::string, std::string> sources_;
};

std::optional<std::string> ProcessEnv(const std::string &name);

}  // namespace figlang::cli

#endif  // FIGLANG_TOOLS_CLI_CONFIG_H_
