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

#include <filesystem>

#include "doctest.h"
#include "figlang/bench/compare.h"
#include "figlang/util/io.h"
#include "figlang/util/random.h"
#include "toy_task.h"

namespace figlang::bench {
namespace {

std::filesystem::path Scratch(const std::string &name) {
  const auto dir = std::filesystem::temp_directory_path() / ("figlang_bench_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST_CASE("emotion loader counts labels and rejects unknown ones") {
  const auto items = ParseTaskJsonl(
      "{\"id\":\"1\",\"text\":\"ugh\",\"labels\":[\"Anger\"]}\n"
      "{\"id\":\"2\",\"text\":\"yay\",\"labels\":[\"Joy\",\"Surprise\"]}\n"
      "{\"id\":\"3\",\"text\":\"ok\",\"labels\":[]}\n"
      "{\"id\":\"4\",\"text\":\"wow\",\"labels\":[\"Surprise\"]}\n"
      "{\"id\":\"5\",\"text\":\"<3\",\"labels\":[\"Love\"]}\n");
  const auto d = MakeEmotionDataset(items);
  const auto counts = ClassCounts(d);
  CHECK(counts.at("Anger") == 1);
  CHECK(counts.at("Joy") == 1);
  CHECK(counts.at("Surprise") == 2);
  CHECK(counts.at("Love") == 1);
  CHECK(counts.at("Fear") == 0);
  CHECK(counts.at("neutral") == 1);
  CHECK(d.mode() == stats::MetricsMode::kMultiLabel);

  CHECK_THROWS_AS(MakeEmotionDataset(ParseTaskJsonl("{\"id\":\"1\",\"text\":\"x\",\"labels\":[\"Rage\"]}\n")),
                  TaskDataError);
  CHECK_THROWS_AS(ParseTaskJsonl(""), TaskDataError);
  CHECK_THROWS_AS(ParseTaskJsonl("{\"id\":\"1\",\"text\":\"x\"}\n"), TaskDataError);
  try {
    ParseTaskJsonl("{\"id\":\"1\",\"text\":\"x\",\"labels\":[]}\nnot json\n");
    FAIL("expected error");
  } catch (const TaskDataError &e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("csv task files") {
  const auto items = ParseTaskCsv("id,text,labels\n1,\"hi, there\",Joy;Love\n2,meh,\n");
  REQUIRE(items.size() == 2);
  CHECK(items[0].text == "hi, there");
  CHECK(items[0].labels == stats::LabelSet{"Joy", "Love"});
  CHECK(items[1].labels.empty());
  CHECK_THROWS_AS(ParseTaskCsv("id,words\n1,x\n"), TaskDataError);
}

TEST_CASE("incivility loader drops Technical") {
  std::string text;
  const char *labels[] = {"Civil", "Technical", "Uncivil", "Uncivil", "Technical", "Civil", "Uncivil"};
  for (int i = 0; i < 7; ++i) {
    text += "{\"id\":\"" + std::to_string(i) + "\",\"text\":\"t\",\"label\":\"" + labels[i] + "\"}\n";
  }
  const auto d = MakeIncivilityDataset(ParseTaskJsonl(text));
  CHECK(d.items.size() == 5);
  CHECK(ClassCounts(d).at("Civil") == 2);
  CHECK(ClassCounts(d).at("Uncivil") == 3);
  const auto only = MakeIncivilityDataset(ParseTaskJsonl("{\"id\":\"1\",\"text\":\"t\",\"label\":\"Technical\"}\n"));
  CHECK(only.items.empty());
  CHECK_THROWS_AS(MakeIncivilityDataset(ParseTaskJsonl("{\"id\":\"1\",\"text\":\"t\",\"labels\":[\"Civil\",\"Uncivil\"]}\n")),
                  TaskDataError);
}

std::vector<TaskItem> PriorityItems(const std::vector<std::size_t> &per_class, const std::string &split) {
  std::vector<TaskItem> items;
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    for (std::size_t i = 0; i < per_class[c]; ++i) {
      items.push_back({split + "-P" + std::to_string(c + 1) + "-" + std::to_string(i), "text",
                       {"P" + std::to_string(c + 1)}, split});
    }
  }
  return items;
}

TEST_CASE("priority sampler") {
  auto items = PriorityItems({40, 40, 40, 40, 40}, "train");
  const auto test = PriorityItems({8, 8, 8, 8, 8}, "test");
  items.insert(items.end(), test.begin(), test.end());
  const auto d = MakePriorityDataset(items, 0.25, 3);
  for (const char *p : {"P1", "P2", "P3", "P4", "P5"}) {
    std::size_t train = 0, held = 0;
    for (const auto &item : d.items) {
      if (item.labels.count(p)) (item.split == "train" ? train : held)++;
    }
    CHECK(train == 10);
    CHECK(held == 2);
  }
  CHECK(MakePriorityDataset(items, 1.0, 3).items.size() == items.size());
  CHECK(MakePriorityDataset(items, 0.25, 3).items.size() == MakePriorityDataset(items, 0.25, 3).items.size());
  auto untagged = items;
  untagged[5].split.clear();
  CHECK_THROWS_AS(MakePriorityDataset(untagged, 0.25, 3), TaskDataError);
  CHECK_THROWS_AS(MakePriorityDataset(items, 0.0, 3), std::invalid_argument);
}

TEST_CASE("improvement arithmetic and formatting") {
  CHECK(FormatImprovement(Improvement(0.734, 0.783)) == "+6.68%");
  CHECK(std::abs(*Improvement(0.734, 0.783) - 6.67) < 0.15);
  CHECK(FormatImprovement(Improvement(0.712, 0.709)) == "-0.42%");
  CHECK(FormatImprovement(Improvement(0.5, 0.5)) == "0.00%");
  CHECK(FormatImprovement(Improvement(0.0, 0.0)) == "-");
  CHECK(FormatImprovement(Improvement(0.0, 0.3)) == "-");
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const double a = 0.01 + rng.Uniform(), b = 0.01 + rng.Uniform();
    CHECK(*Improvement(a, b) == doctest::Approx(-*Improvement(b, a) * (b / a)));
  }
}

TEST_CASE("error analysis") {
  using L = stats::LabelSet;
  const std::vector<L> gold = {{"A"}, {"B"}, {"A"}, {"B"}, {"A"}};
  const std::vector<L> base = {{"A"}, {"A"}, {"B"}, {"B"}, {"A"}};
  const std::vector<L> fl = {{"A"}, {"B"}, {"A"}, {"B"}, {"B"}};
  const auto e = AnalyzeErrors(gold, base, fl);
  CHECK(e.fl_only_correct == std::vector<std::size_t>{1, 2});
  CHECK(e.baseline_only_correct == std::vector<std::size_t>{4});
  const auto same = AnalyzeErrors(gold, base, base);
  CHECK(same.fl_only_correct.empty());
  CHECK(same.baseline_only_correct.empty());
  CHECK_THROWS_AS(AnalyzeErrors(gold, base, std::vector<L>(4)), std::invalid_argument);

  ErrorAnalysis echo;
  echo.fl_only_correct.resize(39);
  echo.baseline_only_correct.resize(27);
  const auto summary = ErrorSummary(echo, "BERT");
  CHECK(summary == "BERT-FL correct where BERT is not: 39\nBERT correct where BERT-FL is not: 27\n");
}

TEST_CASE("single-label micro F1 equals accuracy on random predictions") {
  Rng rng(9);
  const auto labels = LabelSpace(TaskKind::kPriority);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.Below(80);
    std::vector<stats::LabelSet> gold, pred;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
      gold.push_back({labels[rng.Below(5)]});
      pred.push_back(rng.Below(2) ? gold.back() : stats::LabelSet{labels[rng.Below(5)]});
      correct += gold.back() == pred.back();
    }
    const auto m = stats::ClassificationMetrics(gold, pred, labels, stats::MetricsMode::kMultiClass);
    CHECK(m.micro_f1 == static_cast<double>(correct) / static_cast<double>(n));
  }
}

TEST_CASE("linear head separates a linearly separable set") {
  Eigen::MatrixXd x(40, 2);
  std::vector<std::vector<double>> t;
  for (int i = 0; i < 40; ++i) {
    const bool pos = i % 2 == 0;
    x.row(i) << (pos ? 1.0 : -1.0), 0.1 * (i % 5);
    t.push_back({pos ? 1.0 : 0.0, pos ? 0.0 : 1.0});
  }
  TaskConfig cfg;
  cfg.epochs = 30;
  for (auto mode : {stats::MetricsMode::kMultiClass, stats::MetricsMode::kMultiLabel}) {
    LinearHead head(2, 2, mode);
    head.Train(x, t, cfg);
    for (int i = 0; i < 40; ++i) {
      const auto pred = head.Predict(x.row(i).transpose(), {"pos", "neg"}, 0.5);
      CHECK(pred == stats::LabelSet{i % 2 == 0 ? "pos" : "neg"});
    }
  }
}

ComparisonConfig ToyComparison() {
  ComparisonConfig cfg;
  cfg.model = "toy";
  cfg.contrastive.epochs = 20;
  cfg.contrastive.batch_size = 16;
  cfg.contrastive.learning_rate = 0.05;
  cfg.contrastive.seed = 5;
  cfg.task.seed = 5;
  cfg.task.epochs = 40;
  return cfg;
}

TEST_CASE("comparison: FL variant wins on a task its triplets explain") {
  const auto toy = testing::SeparableToyTask();
  const embed::LinearEmbeddingEncoder base({4096, 16, 3, 1.0});
  const auto report = RunComparison(toy.dataset, base, toy.triplets, ToyComparison());
  CHECK(report.test.size() == 40);
  CHECK(report.fl.metrics.micro_f1 >= report.baseline.metrics.micro_f1);
  CHECK(report.fl.metrics.micro_f1 > 0.8);
  REQUIRE(report.fl_log.has_value());
  CHECK(report.fl_log->epochs.size() == 20);
  MESSAGE("baseline micro F1 " << report.baseline.metrics.micro_f1 << ", FL " << report.fl.metrics.micro_f1);

  const auto dir = Scratch("toy");
  const auto files = WriteComparison(report, toy.dataset, dir);
  CHECK(files.size() == 6);
  CHECK(ReadFile(dir / "comparison_meta.json").find(report.split_hash) != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("comparison: self-comparison gives zero improvement everywhere") {
  const auto toy = testing::SeparableToyTask();
  const embed::LinearEmbeddingEncoder base({4096, 16, 3, 1.0});
  auto cfg = ToyComparison();
  cfg.skip_fl_stage = true;
  const auto report = RunComparison(toy.dataset, base, {}, cfg);
  CHECK_FALSE(report.fl_log.has_value());
  const auto table = RenderComparisonTable({report});
  const auto lines = SplitLines(table);
  REQUIRE(lines.size() == 5);
  CHECK(lines[4] == "| +/-    | 0.00% | 0.00%   | 0.00%      |");
  CHECK(report.baseline.predictions == report.fl.predictions);
}

TEST_CASE("comparison: split hash is seed-stable across variants and changes with the seed") {
  const auto toy = testing::SeparableToyTask(60);
  const embed::LinearEmbeddingEncoder base({512, 8, 3, 1.0});
  auto cfg = ToyComparison();
  cfg.skip_fl_stage = true;
  cfg.task.epochs = 2;
  const auto a = RunComparison(toy.dataset, base, {}, cfg);
  const auto b = RunComparison(toy.dataset, base, {}, cfg);
  CHECK(a.split_hash == b.split_hash);
  CHECK(a.dataset_hash == b.dataset_hash);
  cfg.task.seed = 99;
  const auto c = RunComparison(toy.dataset, base, {}, cfg);
  CHECK(c.split_hash != a.split_hash);
  CHECK(c.label_space == a.label_space);
}

TEST_CASE("comparison: failures abort the whole comparison") {
  const auto toy = testing::SeparableToyTask(60);
  const embed::BagOfWordsEncoder frozen({"x"});
  CHECK_THROWS_AS(RunComparison(toy.dataset, frozen, toy.triplets, ToyComparison()), BenchError);
  const embed::LinearEmbeddingEncoder base({512, 8, 3, 1.0});
  CHECK_THROWS_AS(RunComparison(toy.dataset, base, {}, ToyComparison()), BenchError);
  auto bad = ToyComparison();
  bad.contrastive.epochs = 0;
  CHECK_THROWS_AS(RunComparison(toy.dataset, base, toy.triplets, bad), BenchError);
}

TEST_CASE("table rendering from published incivility values") {
  ComparisonReport r;
  r.model = "BERT";
  r.label_space = {"Civil", "Uncivil"};
  auto fill = [](VariantResult &v, double civil, double uncivil, double micro) {
    v.metrics.per_class = {{"Civil", 0, 0, 0, 0, 0, civil}, {"Uncivil", 0, 0, 0, 0, 0, uncivil}};
    v.metrics.micro_f1 = micro;
  };
  fill(r.baseline, 0.537, 0.814, 0.734);
  fill(r.fl, 0.587, 0.853, 0.783);
  ComparisonReport zero = r;
  zero.model = "ZERO";
  fill(zero.baseline, 0.0, 0.5, 0.5);
  fill(zero.fl, 0.0, 0.5, 0.5);
  const auto lines = SplitLines(RenderComparisonTable({r, zero}));
  REQUIRE(lines.size() == 9);
  CHECK(lines[2].find("0.537") != std::string::npos);
  CHECK(lines[3].find("BERT-FL") != std::string::npos);
  CHECK(lines[4].find("+9.31%") != std::string::npos);
  CHECK(lines[4].find("+6.68%") != std::string::npos);
  CHECK(lines[7].find("| -") != std::string::npos);
  CHECK(lines[8].rfind("| Avg. +/-", 0) == 0);
  const auto csv = SplitLines(ComparisonCsv({r}));
  CHECK(csv[0] == "model,row,Civil,Uncivil,micro_f1");
  CHECK(csv[3].rfind("BERT,improvement_pct,9.3110,", 0) == 0);
}

}  // namespace
}  // namespace figlang::bench
