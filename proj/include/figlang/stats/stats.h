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

#ifndef FIGLANG_STATS_STATS_H_
#define FIGLANG_STATS_STATS_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace figlang {
namespace stats {

// Raised when a test statistic is undefined for the given input.
class StatsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Paired observations (x_i, y_i).
struct PairedSample {
  std::vector<double> x;
  std::vector<double> y;
};

// Largest number of non-zero differences for which the exact null
// distribution is used; above it the normal approximation takes over.
inline constexpr std::size_t kWilcoxonExactMax = 25;

struct WilcoxonResult {
  double p_value = 1.0;
  // Sum of ranks of positive differences.
  double w_plus = 0.0;
  // Number of differences left after zero removal.
  std::size_t n_used = 0;
  std::size_t n_zero_dropped = 0;
  bool exact = false;
};

// One-tailed Wilcoxon signed-rank test with alternative x > y.
// Zero differences are dropped; tied |d| receive mid-ranks. The exact
// null distribution (enumerated by dynamic programming over doubled
// ranks) is used for up to kWilcoxonExactMax differences, the normal
// approximation with tie and continuity correction beyond that.
// Throws StatsError when the sample sizes differ, are empty or every
// difference is zero.
WilcoxonResult WilcoxonSignedRank(const PairedSample &sample);

// Convenience wrapper returning only the p-value.
double WilcoxonSignedRankOneTailed(const PairedSample &sample);

struct BhResult {
  double adjusted_p = 1.0;
  bool reject = false;
};

// Benjamini-Hochberg step-up procedure at FDR level q. Output is in the
// order of the input. Adjusted p-values are min(1, p_(i) m / i) with the
// cumulative minimum taken from the largest rank down.
std::vector<BhResult> BenjaminiHochberg(std::span<const double> p_values,
                                        double q);

enum class Magnitude { kNegligible, kSmall, kMedium, kLarge };

std::string_view MagnitudeName(Magnitude m);

// Thresholds on |delta|: small > 0.147, medium > 0.33, large > 0.474.
Magnitude MagnitudeFor(double delta);

struct EffectSize {
  double delta = 0.0;
  Magnitude magnitude = Magnitude::kNegligible;
};

// Cliff's delta: (#{x_i > y_j} - #{x_i < y_j}) / (|x| |y|).
// Computed by sorting y and binary-searching each x, O((m + n) log n).
EffectSize CliffsDelta(std::span<const double> x, std::span<const double> y);

// Train/test index partition.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Stratified split over `labels` (one stratum key per item). Each
// stratum contributes round(train_fraction * size) items to train,
// clamped so that both sides keep at least one item whenever the
// stratum has two or more. Index lists come back sorted.
// Throws StatsError naming the first stratum with fewer than two items.
Split StratifiedSplit(std::span<const std::string> labels,
                      double train_fraction, std::uint64_t seed);

enum class MetricsMode { kMultiLabel, kMultiClass };

struct ClassMetrics {
  std::string label;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricsReport {
  std::vector<ClassMetrics> per_class;
  double micro_precision = 0.0;
  double micro_recall = 0.0;
  double micro_f1 = 0.0;

  const ClassMetrics &ForLabel(std::string_view label) const;
};

using LabelSet = std::set<std::string>;

// Per-class and micro-averaged precision/recall/F1 over the declared
// label space. A label outside `label_space` in either list is an error.
// In kMultiClass mode every gold and pred must hold exactly one label;
// in kMultiLabel mode the empty set is allowed (neutral items). F1 is
// computed from counts as 2TP / (2TP + FP + FN), which is the harmonic
// mean of precision and recall and is 0 when both are 0.
MetricsReport ClassificationMetrics(std::span<const LabelSet> golds,
                                    std::span<const LabelSet> preds,
                                    std::span<const std::string> label_space,
                                    MetricsMode mode);

}  // namespace stats
}  // namespace figlang

#endif  // FIGLANG_STATS_STATS_H_
