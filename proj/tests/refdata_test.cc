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

#include <cmath>
#include <filesystem>
#include <map>

#include "doctest.h"
#include "figlang/bench/tasks.h"
#include "figlang/figdata/triplets.h"
#include "figlang/refdata/reference.h"
#include "figlang/util/io.h"

namespace figlang::refdata {
namespace {

const std::filesystem::path kReference = std::filesystem::path(FIGLANG_DATA_DIR) / "reference";

TEST_CASE("generator reproduces the shipped reference files byte for byte") {
  const auto dir = std::filesystem::temp_directory_path() / "figlang_refdata";
  std::filesystem::remove_all(dir);
  WriteReferenceData(dir);
  for (const auto &name : ReferenceFileNames()) {
    INFO(name);
    REQUIRE(std::filesystem::exists(kReference / name));
    CHECK(ReadFile(dir / name) == ReadFile(kReference / name));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("annotated reference matches the published aggregates") {
  const auto data = figdata::LoadDataset(kReference / "annotated.jsonl");
  const auto stats = figdata::ComputeDatasetStats(data);
  CHECK(stats.n_sentences == 1661);
  CHECK(stats.n_metaphor_sentences == 752);
  CHECK(stats.n_idiom_sentences == 909);
  CHECK(stats.n_unique_expressions == 1741);
  CHECK(stats.n_se_specific == 445);
  CHECK(stats.n_general == 1296);
  CHECK(stats.n_se_only_sentences == 371);
  CHECK(stats.n_general_only_sentences == 1179);
  CHECK(stats.n_both_scope_sentences == 111);
  std::map<figdata::Status, int> by_status;
  for (const auto &item : data) ++by_status[item.status];
  CHECK(by_status[figdata::Status::kAdjudicated] == 310);
  CHECK(by_status[figdata::Status::kDmsSelected] == 1351);
  const auto build = figdata::BuildTriplets(data);
  CHECK(build.triplets.size() == 3322);
  CHECK(build.skipped.empty());
}

TEST_CASE("task reference files load with the published class counts") {
  const auto emotion = bench::LoadEmotionDataset(kReference / "emotion.jsonl");
  CHECK(emotion.items.size() == 2000);
  const auto ec = bench::ClassCounts(emotion);
  CHECK(ec.at("Anger") == 340);
  CHECK(ec.at("Love") == 220);
  CHECK(ec.at("Fear") == 198);
  CHECK(ec.at("Joy") == 422);
  CHECK(ec.at("Sadness") == 274);
  CHECK(ec.at("Surprise") == 328);

  const auto incivility = bench::LoadIncivilityDataset(kReference / "incivility.jsonl");
  CHECK(incivility.items.size() == 718);
  const auto ic = bench::ClassCounts(incivility);
  CHECK(ic.at("Civil") == 232);
  CHECK(ic.at("Uncivil") == 486);

  const auto full = bench::ReadTaskItems(kReference / "priority.jsonl");
  const auto sampled = bench::LoadPriorityDataset(kReference / "priority.jsonl", 0.25, 3);
  auto shares = [](const std::vector<bench::TaskItem> &items) {
    std::map<std::string, std::map<std::string, double>> out;
    std::map<std::string, double> totals;
    for (const auto &i : items) {
      out[i.split][*i.labels.begin()] += 1;
      totals[i.split] += 1;
    }
    for (auto &[split, m] : out) {
      for (auto &[label, n] : m) n = 100.0 * n / totals[split];
    }
    return out;
  };
  const auto before = shares(full);
  const auto after = shares(sampled.items);
  CHECK(before.at("train").at("P3") == doctest::Approx(58.12));
  CHECK(before.at("test").at("P1") == doctest::Approx(19.21));
  for (const auto &[split, m] : before) {
    for (const auto &[label, pct] : m) {
      INFO(split << " " << label);
      CHECK(std::abs(after.at(split).at(label) - pct) <= 0.5);
    }
  }
}

}  // namespace
}  // namespace figlang::refdata
