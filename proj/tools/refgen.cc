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

// Regenerates the synthetic reference data files.

#include <cstdint>
#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "figlang/refdata/reference.h"

int main(int argc, char **argv) {
  CLI::App app{"Write the synthetic reference data files"};
  std::string out = "data/reference";
  std::uint64_t seed = 2024;
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Generator seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  try {
    figlang::refdata::WriteReferenceData(out, seed);
    for (const auto &name : figlang::refdata::ReferenceFileNames()) std::cout << out << "/" << name << "\n";
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
