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

#include "cli/dispatch.h"

#include <exception>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "figlang/util/io.h"

namespace figlang::cli {

int Dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
             const RunConfig::EnvLookup &env) {
  CLI::App app{"figlang: figurative-language toolkit for software-engineering text"};
  app.name(args.empty() ? "figlang" : std::filesystem::path(args[0]).filename().string());
  app.require_subcommand(1);

  struct Bound {
    const Command *command = nullptr;
    CLI::App *app = nullptr;
    std::map<std::string, std::string> flags;
    std::string config_file;
    bool print_config = false;
  };
  std::vector<std::unique_ptr<Bound>> bound;
  for (const auto &cmd : Commands()) {
    auto b = std::make_unique<Bound>();
    b->command = &cmd;
    b->app = app.add_subcommand(cmd.name, cmd.summary);
    b->app->add_option("--config", b->config_file, "TOML-style key = value file");
    b->app->add_flag("--print-config", b->print_config, "Print the merged configuration and exit");
    for (const auto &spec : cmd.specs) {
      std::string help = spec.help;
      if (!spec.default_value.empty()) help += " [default: " + spec.default_value + "]";
      if (spec.required) help += " (required)";
      b->app->add_option("--" + FlagName(spec.key), b->flags[spec.key], help);
    }
    bound.push_back(std::move(b));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << "\n";
    const Bound *active = nullptr;
    for (const auto &b : bound) {
      if (b->app->parsed()) active = b.get();
    }
    err << (active ? active->app->help() : app.help());
    return kExitUsage;
  }

  for (const auto &b : bound) {
    if (!b->app->parsed()) continue;
    const Command &cmd = *b->command;
    try {
      RunConfig cfg(cmd.name, cmd.specs);
      if (!b->config_file.empty() && !std::filesystem::is_regular_file(b->config_file)) {
        throw UsageError("config file '" + b->config_file + "' not found");
      }
      if (!b->config_file.empty()) cfg.ApplyFile(ParseConfigText(ReadFile(b->config_file), cmd.name, cmd.specs));
      cfg.ApplyEnvironment(env);
      std::map<std::string, std::string> given;
      for (const auto &spec : cmd.specs) {
        if (b->app->count("--" + FlagName(spec.key)) > 0) given[spec.key] = b->flags[spec.key];
      }
      cfg.ApplyFlags(given);
      if (b->print_config) {
        out << cfg.Render();
        return kExitOk;
      }
      cfg.CheckRequired();
      Streams streams{out, err};
      cmd.run(cfg, streams);
      return kExitOk;
    } catch (const UsageError &e) {
      err << "usage error: " << e.what() << "\n" << b->app->help();
      return kExitUsage;
    } catch (const std::exception &e) {
      err << "error: " << e.what() << "\n";
      return kExitDomain;
    }
  }
  return kExitUsage;
}

}  // namespace figlang::cli
