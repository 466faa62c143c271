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

#ifndef FIGLANG_TOOLS_CLI_MANIFEST_H_
#define FIGLANG_TOOLS_CLI_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cli/config.h"

namespace figlang::cli {

struct FileDigest {
  std::string path;
  std::string sha256;
};

// Record of one artifact-producing run.
struct RunManifest {
  std::string command;
  std::string config_hash;
  std::map<std::string, std::string> config;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  std::map<std::string, std::uint64_t> seeds;
  std::map<std::string, std::string> versions;
  std::string started_at;
  std::string finished_at;

  std::string ToJson() const;
};

// Digest of a file, or of the sorted (relative path, digest) list of a
// directory's regular files.
std::string DigestPath(const std::filesystem::path &path);

// Manifest skeleton: command, config and its hash, digests of existing
// input paths, every *seed key, tool versions and the start time.
RunManifest StartManifest(const RunConfig &cfg);

// Digests `outputs`, stamps the finish time and writes the manifest to
// `<dir>/run_manifest.json` for a directory target or
// `<file>.manifest.json` for a file target. Returns the manifest path.
std::filesystem::path FinishManifest(RunManifest &m, const std::filesystem::path &target,
                                     const std::vector<std::filesystem::path> &outputs);

std::map<std::string, std::string> ToolVersions();

}  // namespace figlang::cli

#endif  // FIGLANG_TOOLS_CLI_MANIFEST_H_
