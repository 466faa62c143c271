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

#ifndef FIGLANG_BENCH_COMPARE_H_
#define FIGLANG_BENCH_COMPARE_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "figlang/bench/tasks.h"
#include "figlang/contrastive/contrastive.h"
#include "figlang/embed/encoder.h"
#include "figlang/figdata/triplets.h"
#include "figlang/stats/stats.h"

namespace figlang {
namespace bench {

class BenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TaskConfig {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  int epochs = 50;
  int batch_size = 32;
  double learning_rate = 0.05;
  // Multilabel decision threshold on sigmoid scores.
  double threshold = 0.5;

  void Validate() const;
};

struct ComparisonConfig {
  std::string model = "model";
  contrastive::TrainConfig contrastive;
  TaskConfig task;
  // Both variants then share the untouched base encoder.
  bool skip_fl_stage = false;
};

struct VariantResult {
  stats::MetricsReport metrics;
  // Predictions over the test split, aligned with ComparisonReport::test.
  std::vector<stats::LabelSet> predictions;
};

struct ComparisonReport {
  TaskKind task = TaskKind::kEmotion;
  std::string model;
  std::vector<std::string> label_space;
  ComparisonConfig config;
  std::string dataset_hash;
  std::string split_hash;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  VariantResult baseline;
  VariantResult fl;
  std::optional<contrastive::TrainingLog> fl_log;
};

// Relative change in percent; nullopt when base is 0.
std::optional<double> Improvement(double base, double updated);

// "+6.68%", "-0.42%", "0.00%", or "-" when undefined.
std::string FormatImprovement(std::optional<double> pct);

// Sentence vectors for every item, mean-pooled and L2-normalized.
Eigen::MatrixXd EncodeFeatures(const embed::EncoderAdapter &encoder, const std::vector<TaskItem> &items);

// Single linear layer over sentence vectors: sigmoid per class for
// multilabel tasks, softmax otherwise. Weights start at zero.
class LinearHead {
 public:
  LinearHead(Eigen::Index dim, std::size_t classes, stats::MetricsMode mode);

  void Train(const Eigen::MatrixXd &x, const std::vector<std::vector<double>> &targets, const TaskConfig &cfg);
  Eigen::VectorXd Scores(const Eigen::VectorXd &x) const;
  stats::LabelSet Predict(const Eigen::VectorXd &x, const std::vector<std::string> &labels,
                          double threshold) const;

 private:
  stats::MetricsMode mode_;
  Eigen::MatrixXd w_;
  Eigen::VectorXd b_;
};

// Train/test partition: the provided split tags when every item has one,
// otherwise a stratified split keyed by each item's first label in
// label-space order ("neutral" for none).
stats::Split SplitFor(const TaskDataset &d, const TaskConfig &cfg);

std::string SplitHash(const TaskDataset &d, const stats::Split &split);
std::string DatasetHash(const TaskDataset &d);

// Baseline: linear head on the base encoder. FL: contrastive fine-tuning
// of a clone on `triplets`, then the same head training with the same
// seed. Both are scored on one test split.
ComparisonReport RunComparison(const TaskDataset &d, const embed::EncoderAdapter &base,
                               std::span<const figdata::TripletRecord> triplets, const ComparisonConfig &cfg);

struct ErrorAnalysis {
  std::vector<std::size_t> fl_only_correct;
  std::vector<std::size_t> baseline_only_correct;
};

// Exact-match correctness per item. Throws std::invalid_argument on
// misaligned lengths.
ErrorAnalysis AnalyzeErrors(std::span<const stats::LabelSet> golds, std::span<const stats::LabelSet> base_preds,
                            std::span<const stats::LabelSet> fl_preds);

std::string ErrorSummary(const ErrorAnalysis &e, const std::string &model);

// One record per differing item with text, gold and both predictions.
std::string ErrorAnalysisJsonl(const ErrorAnalysis &e, const ComparisonReport &report, const TaskDataset &d);

// Per-class F1 columns plus micro average; model, model-FL and +/- rows
// per report and an average +/- row when more than one report is given.
std::string RenderComparisonTable(const std::vector<ComparisonReport> &reports);
std::string ComparisonCsv(const std::vector<ComparisonReport> &reports);

// comparison.csv, comparison_table.txt, comparison_meta.json,
// error_analysis.jsonl, error_summary.txt and, when the FL stage ran,
// contrastive_log.jsonl.
std::vector<std::filesystem::path> WriteComparison(const ComparisonReport &report, const TaskDataset &d,
                                                   const std::filesystem::path &dir);

}  // namespace bench
}  // namespace figlang

#endif  // FIGLANG_BENCH_COMPARE_H_
