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


// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on
// any failure. Each criterion also enforces its wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "figlang/bench/compare.h"
#include "figlang/bench/tasks.h"
#include "figlang/contrastive/contrastive.h"
#include "figlang/embed/encoder.h"
#include "figlang/embed/geometry.h"
#include "figlang/embed/rq1.h"
#include "figlang/figdata/triplets.h"
#include "figlang/ingest/detect.h"
#include "figlang/prevalence/matcher.h"
#include "figlang/prevalence/normalize.h"
#include "figlang/prevalence/scan.h"
#include "figlang/stats/stats.h"
#include "figlang/util/io.h"
#include "figlang/util/random.h"
#include "oracles.h"
#include "planted_corpus.h"
#include "rq1_fixture.h"
#include "toy_task.h"
#include "toy_triplets.h"

namespace figlang {
namespace {

const std::filesystem::path kReference = std::filesystem::path(FIGLANG_DATA_DIR) / "reference";

// Collects failed expectations for one criterion.
class Tally {
 public:
  void Expect(bool ok, const std::string &what) {
    ++checks_;
    if (ok) return;
    if (failures_.size() < 3) failures_.push_back(what);
    ++failed_;
  }
  void Note(const std::string &text) { notes_.push_back(text); }

  bool ok() const { return failed_ == 0; }
  std::string Summary() const {
    std::ostringstream out;
    if (ok()) {
      out << checks_ << " checks";
      for (const auto &n : notes_) out << "; " << n;
    } else {
      out << failed_ << "/" << checks_ << " checks failed";
      for (const auto &f : failures_) out << "; " << f;
    }
    return out.str();
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string Fmt(double v, int digits = 6) {
  std::ostringstream out;
  out.precision(digits);
  out << v;
  return out.str();
}

bool Near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

bool RelNear(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

Eigen::MatrixXd RandomMatrix(Rng &rng, Eigen::Index n, Eigen::Index d, double lo, double hi) {
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = lo + (hi - lo) * rng.Uniform();
  return m;
}

void InfoNceSuite(Tally &t) {
  using contrastive::InfoNceFromSimilarities;
  const double ln2 = std::log(2.0);
  for (double s : {-1.0, -0.3, 0.0, 0.3, 1.0}) {
    const double l = InfoNceFromSimilarities(s, s);
    t.Expect(Near(l, ln2, 1e-9), "equal similarities " + Fmt(s) + " gave " + Fmt(l, 17));
  }
  const double extreme = InfoNceFromSimilarities(1.0, -1.0);
  t.Expect(Near(extreme, std::log1p(std::exp(-2.0)), 1e-9), "(1,-1) gave " + Fmt(extreme, 17));

  std::vector<double> grid(100);
  for (int i = 0; i < 100; ++i) grid[i] = -1.0 + 2.0 * i / 99.0;
  for (double sn : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      t.Expect(InfoNceFromSimilarities(grid[i], sn) < InfoNceFromSimilarities(grid[i - 1], sn),
               "loss not decreasing in sim_p at " + Fmt(grid[i]));
    }
  }
  for (double sp : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      t.Expect(InfoNceFromSimilarities(sp, grid[i]) > InfoNceFromSimilarities(sp, grid[i - 1]),
               "loss not increasing in sim_n at " + Fmt(grid[i]));
    }
  }
  t.Note("L(1,-1) = " + Fmt(extreme, 12));
}

stats::Magnitude MagnitudeOracle(double delta) {
  const double a = std::fabs(delta);
  if (a > 0.474) return stats::Magnitude::kLarge;
  if (a > 0.33) return stats::Magnitude::kMedium;
  if (a > 0.147) return stats::Magnitude::kSmall;
  return stats::Magnitude::kNegligible;
}

void StatisticsSuite(Tally &t) {
  Rng rng(2024);
  double worst_w = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) % 12;
    stats::PairedSample s;
    for (std::size_t i = 0; i < n; ++i) {
      s.x.push_back(static_cast<double>(rng.Below(7)));
      s.y.push_back(static_cast<double>(rng.Below(7)));
    }
    if (s.x == s.y) s.x[0] += 1.0;
    const double got = stats::WilcoxonSignedRank(s).p_value;
    const double want = testing::BruteForceWilcoxonP(s.x, s.y);
    worst_w = std::max(worst_w, std::fabs(got - want));
    t.Expect(Near(got, want, 1e-9), "wilcoxon n=" + std::to_string(n) + " got " + Fmt(got) + " want " + Fmt(want));
  }

  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> p(1 + rng.Below(40));
    for (auto &v : p) v = rng.Below(10) == 0 ? 0.5 : std::pow(rng.Uniform(), 3.0);
    const double q = 0.01 + 0.2 * rng.Uniform();
    const auto got = stats::BenjaminiHochberg(p, q);
    const auto want = testing::BruteForceBh(p, q);
    for (std::size_t i = 0; i < p.size(); ++i) {
      t.Expect(got[i].reject == want.reject[i], "bh reject mismatch in trial " + std::to_string(trial));
      t.Expect(Near(got[i].adjusted_p, want.adjusted[i], 1e-12), "bh adjusted mismatch in trial " + std::to_string(trial));
    }
  }

  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(1 + rng.Below(40)), y(1 + rng.Below(40));
    const std::uint64_t levels = 2 + rng.Below(20);
    for (auto &v : x) v = static_cast<double>(rng.Below(levels));
    for (auto &v : y) v = static_cast<double>(rng.Below(levels));
    const double got = stats::CliffsDelta(x, y).delta;
    t.Expect(Near(got, testing::BruteForceCliffs(x, y), 1e-15), "cliffs mismatch in trial " + std::to_string(trial));
  }

  std::vector<double> probes = {0.0, 0.147, 0.33, 0.474, 1.0};
  for (double b : {0.147, 0.33, 0.474}) {
    probes.push_back(std::nextafter(b, 1.0));
    probes.push_back(std::nextafter(b, 0.0));
  }
  for (int i = 0; i < 1000; ++i) probes.push_back(rng.Uniform());
  for (double d : probes) {
    for (double signed_d : {d, -d}) {
      t.Expect(stats::MagnitudeFor(signed_d) == MagnitudeOracle(signed_d), "magnitude at " + Fmt(signed_d, 17));
    }
  }
  t.Note("worst wilcoxon |dp| = " + Fmt(worst_w, 3));
}

void GeometrySuite(Tally &t) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.Below(12));
    const auto d = static_cast<Eigen::Index>(1 + rng.Below(8));
    embed::TokenEmbeddings te{RandomMatrix(rng, n, d, -5, 5), {}};
    for (Eigen::Index i = 0; i < n; ++i) te.attention_mask.push_back(rng.Below(4) != 0);
    te.attention_mask[rng.Below(static_cast<std::uint64_t>(n))] = true;
    std::vector<std::size_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    rng.Shuffle(std::span(perm));
    embed::TokenEmbeddings shuffled{Eigen::MatrixXd(n, d), std::vector<bool>(perm.size())};
    for (std::size_t i = 0; i < perm.size(); ++i) {
      shuffled.matrix.row(static_cast<Eigen::Index>(i)) = te.matrix.row(static_cast<Eigen::Index>(perm[i]));
      shuffled.attention_mask[i] = te.attention_mask[perm[i]];
    }
    const double diff = (embed::MeanPool(te).vector - embed::MeanPool(shuffled).vector).cwiseAbs().maxCoeff();
    t.Expect(diff < 1e-12, "mean_pool permutation diff " + Fmt(diff));
  }

  for (int trial = 0; trial < 1000; ++trial) {
    const auto d = static_cast<Eigen::Index>(1 + rng.Below(16));
    const Eigen::VectorXd u = RandomMatrix(rng, d, 1, -3, 3);
    const Eigen::VectorXd v = RandomMatrix(rng, d, 1, -3, 3);
    const double k = 0.01 + 100 * rng.Uniform();
    const double c = embed::Cosine(u, v);
    t.Expect(c >= -1.0 && c <= 1.0, "cosine out of bounds: " + Fmt(c, 17));
    t.Expect(RelNear(embed::Cosine(u, k * u), 1.0, 1e-12), "cosine(u, ku) != 1");
    t.Expect(RelNear(embed::Cosine(k * u, v), c, 1e-12), "cosine not scale invariant");
  }

  embed::SvtConfig cfg;
  cfg.alpha = 0.0;
  cfg.readd_mean = true;
  cfg.normalize_rows = false;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.Below(64));
    const auto d = static_cast<Eigen::Index>(1 + rng.Below(64));
    const auto m = RandomMatrix(rng, n, d, -10, 10);
    const auto out = embed::SvtNormalize(m, cfg);
    const bool shaped = out.rows() == n && out.cols() == d;
    t.Expect(shaped, "svt changed the shape");
    if (shaped) worst = std::max(worst, (out - m).cwiseAbs().maxCoeff());
  }
  t.Expect(worst <= 1e-6, "svt alpha 0 max error " + Fmt(worst));
  t.Note("svt alpha 0 max error " + Fmt(worst, 3));
}

embed::BagOfWordsEncoder FitOn(const std::vector<figdata::AnnotatedSentence> &items) {
  std::vector<std::string> texts;
  for (const auto &s : items) {
    texts.push_back(s.original);
    texts.push_back(*s.ems);
    texts.push_back(*s.dms);
  }
  return embed::BagOfWordsEncoder::Fit(texts);
}

void Rq1Suite(Tally &t) {
  const auto data = testing::Rq1Fixture(60);
  const auto result = embed::EvaluateRq1(data, FitOn(data));
  t.Expect(result.comparisons.size() == 60, "expected 60 comparisons");
  t.Expect(result.report.excluded.empty(), "fixture items were excluded");
  for (const auto &c : result.report.categories) {
    t.Expect(c.percent_ems_wins == 100.0, c.name + " percent " + Fmt(c.percent_ems_wins));
    t.Expect(c.p_value < 0.01, c.name + " p " + Fmt(c.p_value));
    t.Expect(c.cliffs_delta_abs == 1.0, c.name + " |delta| " + Fmt(c.cliffs_delta_abs));
  }
  const auto &overall = result.report.Category("overall");

  const auto same = testing::Rq1Fixture(60, true);
  const auto tied = embed::EvaluateRq1(same, FitOn(same));
  for (const auto &c : tied.report.categories) {
    t.Expect(c.percent_ems_wins == 0.0, c.name + " identical percent " + Fmt(c.percent_ems_wins));
  }
  t.Note("overall " + Fmt(overall.percent_ems_wins) + "%, p " + Fmt(overall.p_value, 3) + ", |delta| " +
         Fmt(overall.cliffs_delta_abs));
}

void TripletSuite(Tally &t) {
  const auto data = figdata::LoadDataset(kReference / "annotated.jsonl");
  t.Expect(data.size() == 1661, "reference has " + std::to_string(data.size()) + " items");
  const auto build = figdata::BuildTriplets(data);
  t.Expect(build.triplets.size() == 3322, "built " + std::to_string(build.triplets.size()) + " triplets");
  const auto s = figdata::ComputeDatasetStats(data);
  t.Expect(s.n_unique_expressions == 1741, "unique " + std::to_string(s.n_unique_expressions));
  t.Expect(s.n_se_specific == 445, "se-specific " + std::to_string(s.n_se_specific));
  t.Expect(s.n_general == 1296, "general " + std::to_string(s.n_general));
  t.Note(std::to_string(build.triplets.size()) + " triplets, " + std::to_string(s.n_unique_expressions) + "/" +
         std::to_string(s.n_se_specific) + "/" + std::to_string(s.n_general));
}

contrastive::TrainConfig ToyTrainConfig() {
  contrastive::TrainConfig cfg;
  cfg.epochs = 20;
  cfg.batch_size = 8;
  cfg.learning_rate = 0.05;
  cfg.seed = 11;
  return cfg;
}

std::pair<double, double> MeanCosines(const std::vector<figdata::TripletRecord> &triplets,
                                      const embed::EncoderAdapter &enc) {
  double ap = 0.0, an = 0.0;
  for (const auto &r : triplets) {
    const auto e = contrastive::EmbedTriplet(r, enc);
    ap += embed::Cosine(e.a, e.p);
    an += embed::Cosine(e.a, e.n);
  }
  const auto n = static_cast<double>(triplets.size());
  return {ap / n, an / n};
}

void ContrastiveSuite(Tally &t) {
  const auto triplets = testing::ToyTriplets(50, 7);
  t.Expect(triplets.size() == 50, "expected 50 triplets");
  embed::LinearEmbeddingEncoder first({1024, 16, 5, 1.0}), second({1024, 16, 5, 1.0});
  const auto before = MeanCosines(triplets, first);
  const auto log = contrastive::FineTune(first, triplets, ToyTrainConfig());
  const auto after = MeanCosines(triplets, first);
  t.Expect(log.epochs.size() == 20, "expected 20 epochs");
  if (log.epochs.empty()) return;
  const double l0 = log.epochs.front().mean_loss, l1 = log.epochs.back().mean_loss;
  t.Expect(l1 < l0, "loss " + Fmt(l0) + " -> " + Fmt(l1));
  t.Expect(after.first > before.first, "cos(a,p) " + Fmt(before.first) + " -> " + Fmt(after.first));
  t.Expect(after.second <= before.second, "cos(a,n) " + Fmt(before.second) + " -> " + Fmt(after.second));
  const auto again = contrastive::FineTune(second, triplets, ToyTrainConfig());
  t.Expect(contrastive::SameTraining(log, again), "same seed gave different training logs");
  t.Note("loss " + Fmt(l0, 4) + " -> " + Fmt(l1, 4) + ", cos(a,p) " + Fmt(before.first, 3) + " -> " +
         Fmt(after.first, 3) + ", cos(a,n) " + Fmt(before.second, 3) + " -> " + Fmt(after.second, 3));
}

bench::ComparisonConfig ToyComparison() {
  bench::ComparisonConfig cfg;
  cfg.model = "toy";
  cfg.contrastive.epochs = 20;
  cfg.contrastive.batch_size = 16;
  cfg.contrastive.learning_rate = 0.05;
  cfg.contrastive.seed = 5;
  cfg.task.seed = 5;
  cfg.task.epochs = 40;
  return cfg;
}

std::vector<std::string> SplitCells(const std::string &row) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(row);
  while (std::getline(in, cell, '|')) {
    const auto b = cell.find_first_not_of(' ');
    const auto e = cell.find_last_not_of(' ');
    if (b != std::string::npos) cells.push_back(cell.substr(b, e - b + 1));
  }
  return cells;
}

void BenchSuite(Tally &t) {
  const auto toy = testing::SeparableToyTask(200, 21);
  t.Expect(toy.dataset.items.size() == 200, "expected 200 items");
  const embed::LinearEmbeddingEncoder base({4096, 16, 3, 1.0});
  const auto report = bench::RunComparison(toy.dataset, base, toy.triplets, ToyComparison());
  const double fl = report.fl.metrics.micro_f1, bl = report.baseline.metrics.micro_f1;
  t.Expect(fl >= bl, "FL micro-F1 " + Fmt(fl) + " below baseline " + Fmt(bl));

  auto cfg = ToyComparison();
  cfg.skip_fl_stage = true;
  const auto self = bench::RunComparison(toy.dataset, base, {}, cfg);
  std::istringstream table(bench::RenderComparisonTable({self}));
  std::string line;
  std::size_t improvement_rows = 0;
  while (std::getline(table, line)) {
    const auto cells = SplitCells(line);
    if (cells.empty() || cells.front() != "+/-") continue;
    ++improvement_rows;
    t.Expect(cells.size() > 1, "empty improvement row");
    for (std::size_t i = 1; i < cells.size(); ++i) t.Expect(cells[i] == "0.00%", "improvement cell " + cells[i]);
  }
  t.Expect(improvement_rows > 0, "no improvement row rendered");

  Rng rng(9);
  const auto labels = bench::LabelSpace(bench::TaskKind::kPriority);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.Below(80);
    std::vector<stats::LabelSet> gold, pred;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
      gold.push_back({labels[rng.Below(labels.size())]});
      pred.push_back(rng.Below(2) ? gold.back() : stats::LabelSet{labels[rng.Below(labels.size())]});
      correct += gold.back() == pred.back();
    }
    const auto m = stats::ClassificationMetrics(gold, pred, labels, stats::MetricsMode::kMultiClass);
    t.Expect(m.micro_f1 == static_cast<double>(correct) / static_cast<double>(n),
             "micro F1 " + Fmt(m.micro_f1, 17) + " != accuracy");
  }
  t.Note("baseline " + Fmt(bl, 4) + ", FL " + Fmt(fl, 4));
}

void WriteInto(const prevalence::PrevalenceReport &report, const std::filesystem::path &dir,
               std::map<std::string, std::string> &files) {
  std::filesystem::remove_all(dir);
  for (const auto &p : prevalence::WriteReport(report, dir)) files[p.filename().string()] = ReadFile(p);
  std::filesystem::remove_all(dir);
}

void PrevalenceSuite(Tally &t) {
  const auto corpus = testing::PlantedCorpus();
  const prevalence::Matcher m(testing::PlantedLexicon());
  ingest::AcceptAllDetector pass;
  const auto report = prevalence::Scan(corpus, m, {&pass});
  t.Expect(report.sentences_total == 1000, "total " + std::to_string(report.sentences_total));
  t.Expect(report.sentences_matched_se == 90 && report.sentences_matched_general == 220 &&
               report.sentences_matched_both == 27,
           "matched counts differ from the plant");
  t.Expect(report.pct_se == 9.0, "pct_se " + Fmt(report.pct_se, 17));
  t.Expect(report.pct_general == 22.0, "pct_general " + Fmt(report.pct_general, 17));
  t.Expect(report.pct_both == 2.7, "pct_both " + Fmt(report.pct_both, 17));

  const auto scratch = std::filesystem::temp_directory_path() / "figlang_acceptance_prevalence";
  std::map<std::string, std::string> reference;
  WriteInto(report, scratch, reference);
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    auto shuffled = corpus;
    rng.Shuffle(std::span(shuffled));
    std::vector<prevalence::PrevalenceCounts> parts;
    std::size_t pos = 0;
    while (pos < shuffled.size()) {
      const std::size_t len = std::min<std::size_t>(shuffled.size() - pos, 1 + rng.Below(300));
      parts.push_back(prevalence::ScanShard(std::span(shuffled).subspan(pos, len), m, {&pass}, 1 + rng.Below(64)));
      pos += len;
    }
    rng.Shuffle(std::span(parts));
    prevalence::PrevalenceCounts merged;
    for (const auto &p : parts) merged.Merge(p);
    std::map<std::string, std::string> files;
    WriteInto(prevalence::Finalize(merged, m.entries()), scratch, files);
    t.Expect(files == reference, "sharding " + std::to_string(trial) + " changed the report");
  }

  prevalence::ExpressionLexicon lex;
  lex.entries.push_back({"e1", "root cause", prevalence::NormalizeForMatching("root cause"), figdata::Scope::kSeSpecific});
  const prevalence::Matcher root(lex);
  for (const char *text : {"the root cause is here", "Root-causes everywhere", "three root causes"}) {
    const auto found = root.Find(text);
    t.Expect(found.size() == 1 && found[0].entry == 0, std::string("variant not matched once: ") + text);
  }
  t.Note(Fmt(report.pct_se) + "% / " + Fmt(report.pct_general) + "% / " + Fmt(report.pct_both) + "%");
}

void LoaderSuite(Tally &t) {
  const auto emotion = bench::LoadEmotionDataset(kReference / "emotion.jsonl");
  t.Expect(emotion.items.size() == 2000, "emotion items " + std::to_string(emotion.items.size()));
  const auto ec = bench::ClassCounts(emotion);
  const std::map<std::string, std::size_t> want_e = {{"Anger", 340}, {"Love", 220},    {"Fear", 198},
                                                     {"Joy", 422},   {"Sadness", 274}, {"Surprise", 328}};
  for (const auto &[label, n] : want_e) {
    const auto it = ec.find(label);
    const std::size_t got = it == ec.end() ? 0 : static_cast<std::size_t>(it->second);
    t.Expect(got == n, label + " count " + std::to_string(got));
  }

  const auto incivility = bench::LoadIncivilityDataset(kReference / "incivility.jsonl");
  t.Expect(incivility.items.size() == 718, "incivility items " + std::to_string(incivility.items.size()));
  const auto ic = bench::ClassCounts(incivility);
  t.Expect(ic.count("Civil") && ic.at("Civil") == 232, "civil count");
  t.Expect(ic.count("Uncivil") && ic.at("Uncivil") == 486, "uncivil count");

  using Shares = std::map<std::string, std::map<std::string, double>>;
  auto shares = [](const std::vector<bench::TaskItem> &items) {
    Shares out;
    std::map<std::string, double> totals;
    for (const auto &i : items) {
      out[i.split][*i.labels.begin()] += 1;
      totals[i.split] += 1;
    }
    for (auto &[split, m] : out)
      for (auto &[label, n] : m) n = 100.0 * n / totals[split];
    return out;
  };
  const auto full = shares(bench::ReadTaskItems(kReference / "priority.jsonl"));
  double worst = 0.0;
  for (double fraction : {0.1, 0.25, 0.5}) {
    for (std::uint64_t seed : {1, 2, 3}) {
      const auto sampled = shares(bench::LoadPriorityDataset(kReference / "priority.jsonl", fraction, seed).items);
      for (const auto &[split, m] : full) {
        for (const auto &[label, pct] : m) {
          const double got = sampled.count(split) && sampled.at(split).count(label) ? sampled.at(split).at(label) : 0.0;
          worst = std::max(worst, std::fabs(got - pct));
          t.Expect(std::fabs(got - pct) <= 0.5, split + " " + label + " share drift " + Fmt(got - pct, 3) +
                                                    "pp at fraction " + Fmt(fraction));
        }
      }
    }
  }
  t.Note("worst priority share drift " + Fmt(worst, 3) + "pp");
}

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void(Tally &)> run;
};

}  // namespace
}  // namespace figlang

int main() {
  using figlang::Criterion;
  spdlog::set_level(spdlog::level::err);
  const std::vector<Criterion> criteria = {
      {"infonce-unit", 1.0, figlang::InfoNceSuite},
      {"statistics-oracles", 30.0, figlang::StatisticsSuite},
      {"embedding-geometry", 10.0, figlang::GeometrySuite},
      {"rq1-desk-reproduction", 5.0, figlang::Rq1Suite},
      {"triplet-cardinality", 0.0, figlang::TripletSuite},
      {"contrastive-progress", 60.0, figlang::ContrastiveSuite},
      {"benchmark-harness", 0.0, figlang::BenchSuite},
      {"prevalence-reproduction", 0.0, figlang::PrevalenceSuite},
      {"dataset-loaders", 0.0, figlang::LoaderSuite},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    figlang::Tally tally;
    const auto start = std::chrono::steady_clock::now();
    std::optional<std::string> crash;
    try {
      c.run(tally);
    } catch (const std::exception &e) {
      crash = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool over = c.budget_seconds > 0 && secs >= c.budget_seconds;
    const bool ok = tally.ok() && !crash && !over;
    failed += !ok;
    std::string detail = crash ? "exception: " + *crash : tally.Summary();
    if (over) detail += "; exceeded " + figlang::Fmt(c.budget_seconds) + "s budget";
    std::printf("%s %-24s %8.3fs  %s\n", ok ? "PASS" : "FAIL", c.name.c_str(), secs, detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
