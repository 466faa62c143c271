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

#include "figlang/bench/compare.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

#include "json.hpp"

#include "figlang/embed/geometry.h"
#include "figlang/util/io.h"
#include "figlang/util/random.h"

namespace figlang {
namespace bench {

namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::vector<std::vector<double>> Targets(const TaskDataset &d, std::span<const std::size_t> rows) {
  std::vector<std::vector<double>> t;
  for (std::size_t r : rows) {
    std::vector<double> v(d.label_space.size(), 0.0);
    for (std::size_t k = 0; k < d.label_space.size(); ++k) {
      if (d.items[r].labels.count(d.label_space[k])) v[k] = 1.0;
    }
    t.push_back(std::move(v));
  }
  return t;
}

Eigen::MatrixXd Rows(const Eigen::MatrixXd &x, std::span<const std::size_t> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

VariantResult Evaluate(const TaskDataset &d, const embed::EncoderAdapter &encoder, const stats::Split &split,
                       const TaskConfig &cfg) {
  const Eigen::MatrixXd features = EncodeFeatures(encoder, d.items);
  LinearHead head(features.cols(), d.label_space.size(), d.mode());
  head.Train(Rows(features, split.train), Targets(d, split.train), cfg);
  VariantResult out;
  std::vector<stats::LabelSet> golds;
  for (std::size_t r : split.test) {
    golds.push_back(d.items[r].labels);
    out.predictions.push_back(
        head.Predict(features.row(static_cast<Eigen::Index>(r)).transpose(), d.label_space, cfg.threshold));
  }
  out.metrics = stats::ClassificationMetrics(golds, out.predictions, d.label_space, d.mode());
  return out;
}

std::string LabelsText(const stats::LabelSet &s) {
  std::string out;
  for (const auto &l : s) out += (out.empty() ? "" : ";") + l;
  return out;
}

}  // namespace

void TaskConfig::Validate() const {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw BenchError("task.train_fraction must be in (0, 1)");
  if (epochs < 1) throw BenchError("task.epochs must be >= 1");
  if (batch_size < 1) throw BenchError("task.batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw BenchError("task.learning_rate must be positive");
  if (!(threshold > 0.0 && threshold < 1.0)) throw BenchError("task.threshold must be in (0, 1)");
}

std::optional<double> Improvement(double base, double updated) {
  if (base == 0.0) return std::nullopt;
  return 100.0 * (updated - base) / base;
}

std::string FormatImprovement(std::optional<double> pct) {
  if (!pct) return "-";
  std::string s = FormatFixed(*pct, 2);
  if (s == "-0.00") s = "0.00";
  if (s != "0.00" && s[0] != '-') s = "+" + s;
  return s + "%";
}

Eigen::MatrixXd EncodeFeatures(const embed::EncoderAdapter &encoder, const std::vector<TaskItem> &items) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(items.size()), encoder.Dimension());
  for (std::size_t i = 0; i < items.size(); ++i) {
    Eigen::VectorXd v;
    try {
      v = embed::MeanPool(encoder.Encode(items[i].text)).vector;
    } catch (const std::exception &e) {
      throw BenchError("encoding item '" + items[i].id + "' failed: " + e.what());
    }
    if (v.size() != x.cols()) throw BenchError("encoder returned a vector of the wrong dimension");
    const double n = v.norm();
    if (n > 0.0) v /= n;
    x.row(static_cast<Eigen::Index>(i)) = v.transpose();
  }
  return x;
}

LinearHead::LinearHead(Eigen::Index dim, std::size_t classes, stats::MetricsMode mode)
    : mode_(mode),
      w_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(classes), dim)),
      b_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(classes))) {}

Eigen::VectorXd LinearHead::Scores(const Eigen::VectorXd &x) const {
  Eigen::VectorXd z = w_ * x + b_;
  if (mode_ == stats::MetricsMode::kMultiLabel) return z.unaryExpr([](double v) { return Sigmoid(v); });
  const double m = z.maxCoeff();
  Eigen::VectorXd e = (z.array() - m).exp();
  return e / e.sum();
}

stats::LabelSet LinearHead::Predict(const Eigen::VectorXd &x, const std::vector<std::string> &labels,
                                    double threshold) const {
  const Eigen::VectorXd s = Scores(x);
  stats::LabelSet out;
  if (mode_ == stats::MetricsMode::kMultiLabel) {
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s(k) >= threshold) out.insert(labels[static_cast<std::size_t>(k)]);
    }
  } else {
    Eigen::Index best = 0;
    s.maxCoeff(&best);
    out.insert(labels[static_cast<std::size_t>(best)]);
  }
  return out;
}

void LinearHead::Train(const Eigen::MatrixXd &x, const std::vector<std::vector<double>> &targets,
                       const TaskConfig &cfg) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (n == 0) throw BenchError("linear head: no training items");
  const auto k = w_.rows(), d = w_.cols();
  std::vector<double> params(static_cast<std::size_t>(k * d + k)), grads(params.size());
  contrastive::Adam adam(params.size(), cfg.learning_rate, {});
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto batch = static_cast<std::size_t>(cfg.batch_size);

  auto load = [&] {
    Eigen::Map<Eigen::MatrixXd>(params.data(), k, d) = w_;
    Eigen::Map<Eigen::VectorXd>(params.data() + k * d, k) = b_;
  };
  load();
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.Shuffle(std::span(order));
    for (std::size_t lo = 0; lo < n; lo += batch) {
      const std::size_t hi = std::min(n, lo + batch);
      Eigen::Map<Eigen::MatrixXd> gw(grads.data(), k, d);
      Eigen::Map<Eigen::VectorXd> gb(grads.data() + k * d, k);
      gw.setZero();
      gb.setZero();
      for (std::size_t i = lo; i < hi; ++i) {
        const auto row = static_cast<Eigen::Index>(order[i]);
        const Eigen::VectorXd xi = x.row(row).transpose();
        Eigen::VectorXd delta = Scores(xi);
        for (Eigen::Index c = 0; c < k; ++c) delta(c) -= targets[order[i]][static_cast<std::size_t>(c)];
        delta /= static_cast<double>(hi - lo);
        gw.noalias() += delta * xi.transpose();
        gb += delta;
      }
      adam.Step(params, grads);
      w_ = Eigen::Map<const Eigen::MatrixXd>(params.data(), k, d);
      b_ = Eigen::Map<const Eigen::VectorXd>(params.data() + k * d, k);
    }
  }
}

stats::Split SplitFor(const TaskDataset &d, const TaskConfig &cfg) {
  const bool tagged = !d.items.empty() && std::all_of(d.items.begin(), d.items.end(), [](const TaskItem &i) {
    return i.split == "train" || i.split == "test";
  });
  if (tagged) {
    stats::Split s;
    for (std::size_t i = 0; i < d.items.size(); ++i) (d.items[i].split == "train" ? s.train : s.test).push_back(i);
    if (s.train.empty() || s.test.empty()) throw BenchError("split tags leave one side empty");
    return s;
  }
  std::vector<std::string> strata;
  for (const auto &item : d.items) {
    std::string key = "neutral";
    for (const auto &l : d.label_space) {
      if (item.labels.count(l)) {
        key = l;
        break;
      }
    }
    strata.push_back(key);
  }
  return stats::StratifiedSplit(strata, cfg.train_fraction, cfg.seed);
}

std::string SplitHash(const TaskDataset &d, const stats::Split &split) {
  std::string buf = "train\n";
  for (std::size_t i : split.train) buf += d.items[i].id + "\n";
  buf += "test\n";
  for (std::size_t i : split.test) buf += d.items[i].id + "\n";
  return Sha256Hex(buf);
}

std::string DatasetHash(const TaskDataset &d) {
  return Sha256Hex(std::string(ToString(d.task)) + "\n" + TaskItemsToJsonl(d.items));
}

ComparisonReport RunComparison(const TaskDataset &d, const embed::EncoderAdapter &base,
                               std::span<const figdata::TripletRecord> triplets, const ComparisonConfig &cfg) {
  ComparisonReport report;
  try {
    cfg.task.Validate();
    if (!cfg.skip_fl_stage) cfg.contrastive.Validate();
    if (d.items.empty()) throw BenchError("empty task dataset");
    report.task = d.task;
    report.model = cfg.model;
    report.label_space = d.label_space;
    report.config = cfg;
    report.dataset_hash = DatasetHash(d);
    const auto split = SplitFor(d, cfg.task);
    report.train = split.train;
    report.test = split.test;
    report.split_hash = SplitHash(d, split);

    auto fl_encoder = base.Clone();
    if (!cfg.skip_fl_stage) {
      if (triplets.empty()) throw BenchError("FL variant needs triplets");
      spdlog::info("bench: contrastive stage on {} triplets", triplets.size());
      report.fl_log = contrastive::FineTune(*fl_encoder, triplets, cfg.contrastive);
    }
    spdlog::info("bench: {} task stage, {} train / {} test", ToString(d.task), split.train.size(),
                 split.test.size());
    report.baseline = Evaluate(d, base, split, cfg.task);
    report.fl = Evaluate(d, *fl_encoder, split, cfg.task);
  } catch (const BenchError &) {
    throw;
  } catch (const std::exception &e) {
    throw BenchError(std::string("comparison aborted: ") + e.what());
  }
  return report;
}

ErrorAnalysis AnalyzeErrors(std::span<const stats::LabelSet> golds, std::span<const stats::LabelSet> base_preds,
                            std::span<const stats::LabelSet> fl_preds) {
  if (golds.size() != base_preds.size() || golds.size() != fl_preds.size()) {
    throw std::invalid_argument("error_analysis: gold and prediction lists differ in length");
  }
  ErrorAnalysis e;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    const bool b = base_preds[i] == golds[i];
    const bool f = fl_preds[i] == golds[i];
    if (f && !b) e.fl_only_correct.push_back(i);
    if (b && !f) e.baseline_only_correct.push_back(i);
  }
  return e;
}

std::string ErrorSummary(const ErrorAnalysis &e, const std::string &model) {
  return model + "-FL correct where " + model + " is not: " + std::to_string(e.fl_only_correct.size()) + "\n" +
         model + " correct where " + model + "-FL is not: " + std::to_string(e.baseline_only_correct.size()) + "\n";
}

std::string ErrorAnalysisJsonl(const ErrorAnalysis &e, const ComparisonReport &report, const TaskDataset &d) {
  std::string out;
  auto emit = [&](const std::vector<std::size_t> &idx, std::string_view which) {
    for (std::size_t t : idx) {
      const auto &item = d.items[report.test.at(t)];
      out += nlohmann::ordered_json{{"id", item.id},
                                    {"which", which},
                                    {"text", item.text},
                                    {"gold", item.labels},
                                    {"baseline", report.baseline.predictions.at(t)},
                                    {"fl", report.fl.predictions.at(t)}}
                 .dump() +
             "\n";
    }
  };
  emit(e.fl_only_correct, "fl_only_correct");
  emit(e.baseline_only_correct, "baseline_only_correct");
  return out;
}

std::string RenderComparisonTable(const std::vector<ComparisonReport> &reports) {
  if (reports.empty()) return "";
  const auto &labels = reports.front().label_space;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head = {"Model"};
  head.insert(head.end(), labels.begin(), labels.end());
  head.push_back("Micro Avg.");
  rows.push_back(head);
  std::vector<std::vector<double>> sums(labels.size() + 1);
  for (const auto &r : reports) {
    if (r.label_space != labels) throw BenchError("reports with different label spaces cannot share a table");
    std::vector<std::string> b = {r.model}, f = {r.model + "-FL"}, imp = {"+/-"};
    for (std::size_t k = 0; k <= labels.size(); ++k) {
      const double bv = k < labels.size() ? r.baseline.metrics.ForLabel(labels[k]).f1 : r.baseline.metrics.micro_f1;
      const double fv = k < labels.size() ? r.fl.metrics.ForLabel(labels[k]).f1 : r.fl.metrics.micro_f1;
      b.push_back(FormatFixed(bv, 3));
      f.push_back(FormatFixed(fv, 3));
      const auto pct = Improvement(bv, fv);
      imp.push_back(FormatImprovement(pct));
      if (pct) sums[k].push_back(*pct);
    }
    rows.push_back(b);
    rows.push_back(f);
    rows.push_back(imp);
  }
  if (reports.size() > 1) {
    std::vector<std::string> avg = {"Avg. +/-"};
    for (const auto &s : sums) {
      avg.push_back(s.empty() ? "-"
                              : FormatImprovement(std::accumulate(s.begin(), s.end(), 0.0) /
                                                  static_cast<double>(s.size())));
    }
    rows.push_back(avg);
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto &row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out += "|";
    for (std::size_t i = 0; i < rows[k].size(); ++i) {
      out += " " + rows[k][i] + std::string(width[i] - rows[k][i].size(), ' ') + " |";
    }
    out += "\n";
    if (k == 0) {
      out += "|";
      for (std::size_t w : width) out += std::string(w + 2, '-') + "|";
      out += "\n";
    }
  }
  return out;
}

std::string ComparisonCsv(const std::vector<ComparisonReport> &reports) {
  if (reports.empty()) return "";
  const auto &labels = reports.front().label_space;
  std::string out = "model,row";
  for (const auto &l : labels) out += "," + CsvEscape(l);
  out += ",micro_f1\n";
  for (const auto &r : reports) {
    std::string b = CsvEscape(r.model) + ",baseline", f = CsvEscape(r.model) + ",fl",
                imp = CsvEscape(r.model) + ",improvement_pct";
    for (std::size_t k = 0; k <= labels.size(); ++k) {
      const double bv = k < labels.size() ? r.baseline.metrics.ForLabel(labels[k]).f1 : r.baseline.metrics.micro_f1;
      const double fv = k < labels.size() ? r.fl.metrics.ForLabel(labels[k]).f1 : r.fl.metrics.micro_f1;
      b += "," + FormatFixed(bv, 6);
      f += "," + FormatFixed(fv, 6);
      const auto pct = Improvement(bv, fv);
      imp += "," + (pct ? FormatFixed(*pct, 4) : std::string());
    }
    out += b + "\n" + f + "\n" + imp + "\n";
  }
  return out;
}

std::vector<std::filesystem::path> WriteComparison(const ComparisonReport &report, const TaskDataset &d,
                                                   const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  std::vector<stats::LabelSet> golds;
  for (std::size_t r : report.test) golds.push_back(d.items[r].labels);
  const auto errors = AnalyzeErrors(golds, report.baseline.predictions, report.fl.predictions);
  nlohmann::ordered_json meta = {{"task", ToString(report.task)},
                                 {"model", report.model},
                                 {"dataset_hash", report.dataset_hash},
                                 {"split_hash", report.split_hash},
                                 {"train_items", report.train.size()},
                                 {"test_items", report.test.size()},
                                 {"task_seed", report.config.task.seed},
                                 {"contrastive_seed", report.config.contrastive.seed},
                                 {"fl_stage_skipped", report.config.skip_fl_stage},
                                 {"threshold", report.config.task.threshold},
                                 {"task_epochs", report.config.task.epochs},
                                 {"task_learning_rate", report.config.task.learning_rate},
                                 {"task_batch_size", report.config.task.batch_size}};
  std::vector<std::pair<std::string, std::string>> files = {
      {"comparison.csv", ComparisonCsv({report})},
      {"comparison_table.txt", RenderComparisonTable({report})},
      {"comparison_meta.json", meta.dump(2) + "\n"},
      {"error_analysis.jsonl", ErrorAnalysisJsonl(errors, report, d)},
      {"error_summary.txt", ErrorSummary(errors, report.model)}};
  if (report.fl_log) files.emplace_back("contrastive_log.jsonl", report.fl_log->ToJsonl());
  std::vector<std::filesystem::path> written;
  for (const auto &[name, body] : files) {
    WriteFileAtomic(dir / name, body);
    written.push_back(dir / name);
  }
  return written;
}

}  // namespace bench
}  // namespace figlang
