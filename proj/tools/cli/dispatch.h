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

#ifndef FIGLANG_TOOLS_CLI_DISPATCH_H_
#define FIGLANG_TOOLS_CLI_DISPATCH_H_

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "cli/config.h"

namespace figlang::cli {

// Failures inside a command that are not usage errors; exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::ostream &out;
  std::ostream &err;
};

struct Command {
  std::string name;
  std::string summary;
  std::vector<OptionSpec> specs;
  std::function<void(const RunConfig &, Streams &)> run;
};

const std::vector<Command> &Commands();

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// args[0] is the program name. Returns the process exit code.
int Dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
             const RunConfig::EnvLookup &env = ProcessEnv);

}  // namespace figlang::cli

#endif  // FIGLANG_TOOLS_CLI_DISPATCH_H_
