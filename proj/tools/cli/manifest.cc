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

#include "cli/manifest.h"

#include <Eigen/Core>
#include <algorithm>
#include <chrono>
#include <spdlog/version.h>

#include "figlang/annotate/store.h"
#include "figlang/figdata/llm.h"
#include "figlang/util/io.h"
#include "json.hpp"

#ifndef FIGLANG_VERSION
#define FIGLANG_VERSION "0.0.0"
#endif

namespace figlang::cli {
namespace {

std::string Now() {
  return FormatUtc(std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
}

bool EndsWith(const std::string &s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string DigestPath(const std::filesystem::path &path) {
  if (!std::filesystem::is_directory(path)) return Sha256File(path);
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto &e : std::filesystem::recursive_directory_iterator(path)) {
    if (!e.is_regular_file()) continue;
    entries.emplace_back(std::filesystem::relative(e.path(), path).generic_string(), Sha256File(e.path()));
  }
  std::sort(entries.begin(), entries.end());
  std::string listing;
  for (const auto &[rel, digest] : entries) listing += rel + "\t" + digest + "\n";
  return Sha256Hex(listing);
}

std::map<std::string, std::string> ToolVersions() {
  return {{"figlang", FIGLANG_VERSION},
          {"compiler", __VERSION__},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"spdlog", std::to_string(SPDLOG_VER_MAJOR) + "." + std::to_string(SPDLOG_VER_MINOR) + "." +
                         std::to_string(SPDLOG_VER_PATCH)},
          {"dms_prompt", std::string(figdata::PromptVersion())},
          {"rule_manifest", Sha256Hex(annotate::RuleManifestJson()).substr(0, 16)}};
}

std::string RunManifest::ToJson() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["config"] = config;
  auto digests = [](const std::vector<FileDigest> &v) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto &d : v) arr.push_back({{"path", d.path}, {"sha256", d.sha256}});
    return arr;
  };
  j["inputs"] = digests(inputs);
  j["outputs"] = digests(outputs);
  j["seeds"] = seeds;
  j["versions"] = versions;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  return j.dump(2) + "\n";
}

RunManifest StartManifest(const RunConfig &cfg) {
  RunManifest m;
  m.command = cfg.command();
  m.config_hash = cfg.Hash();
  m.config = cfg.values();
  for (const auto &s : cfg.specs()) {
    const auto &v = cfg.values().at(s.key);
    if (s.role == OptionRole::kInput && !v.empty()) {
      for (const auto &path : cfg.GetList(s.key)) {
        if (std::filesystem::exists(path)) m.inputs.push_back({path, DigestPath(path)});
      }
    }
    if (EndsWith(s.key, "seed") && !v.empty()) m.seeds[s.key] = cfg.GetUnsigned(s.key);
  }
  m.versions = ToolVersions();
  m.started_at = Now();
  return m;
}

std::filesystem::path FinishManifest(RunManifest &m, const std::filesystem::path &target,
                                     const std::vector<std::filesystem::path> &outputs) {
  for (const auto &p : outputs) m.outputs.push_back({p.string(), DigestPath(p)});
  m.finished_at = Now();
  const auto path = std::filesystem::is_directory(target) ? target / "run_manifest.json"
                                                           : std::filesystem::path(target.string() + ".manifest.json");
  WriteFileAtomic(path, m.ToJson());
  return path;
}

}  // namespace figlang::cli
