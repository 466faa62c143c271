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

#include "figlang/stats/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "figlang/util/random.h"

namespace figlang {
namespace stats {

WilcoxonResult WilcoxonSignedRank(const PairedSample &sample) {
  if (sample.x.size() != sample.y.size()) {
    throw StatsError("wilcoxon: x and y differ in length");
  }
  if (sample.x.empty()) throw StatsError("wilcoxon: empty sample");

  WilcoxonResult result;
  std::vector<double> diffs;
  diffs.reserve(sample.x.size());
  for (std::size_t i = 0; i < sample.x.size(); ++i) {
    const double d = sample.x[i] - sample.y[i];
    if (!std::isfinite(d)) throw StatsError("wilcoxon: non-finite difference");
    if (d == 0.0) {
      ++result.n_zero_dropped;
    } else {
      diffs.push_back(d);
    }
  }
  const std::size_t n = diffs.size();
  if (n == 0) throw StatsError("wilcoxon: all differences are zero");
  result.n_used = n;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(diffs[a]) < std::fabs(diffs[b]);
  });

  // Doubled mid-ranks keep tied ranks integral.
  std::vector<std::int64_t> rank2(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::fabs(diffs[order[j + 1]]) == std::fabs(diffs[order[i]])) ++j;
    const auto r2 = static_cast<std::int64_t>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = r2;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }

  std::int64_t w2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (diffs[i] > 0) w2 += rank2[i];
  }
  result.w_plus = static_cast<double>(w2) / 2.0;

  if (n <= kWilcoxonExactMax) {
    result.exact = true;
    const std::int64_t total = std::accumulate(rank2.begin(), rank2.end(), std::int64_t{0});
    // counts[s] = number of sign assignments whose positive doubled-rank sum is s.
    std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
    counts[0] = 1.0;
    std::int64_t reach = 0;
    for (std::int64_t r : rank2) {
      for (std::int64_t s = reach; s >= 0; --s) {
        counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
      }
      reach += r;
    }
    double upper = 0.0;
    for (std::int64_t s = w2; s <= total; ++s) upper += counts[static_cast<std::size_t>(s)];
    result.p_value = std::ldexp(upper, -static_cast<int>(n));
  } else {
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    const double z = (result.w_plus - mean - 0.5) / std::sqrt(var);
    result.p_value = 0.5 * std::erfc(z / std::sqrt(2.0));
  }
  result.p_value = std::clamp(result.p_value, 0.0, 1.0);
  return result;
}

double WilcoxonSignedRankOneTailed(const PairedSample &sample) {
  return WilcoxonSignedRank(sample).p_value;
}

std::vector<BhResult> BenjaminiHochberg(std::span<const double> p_values, double q) {
  if (!(q > 0.0 && q < 1.0)) throw StatsError("benjamini-hochberg: q must lie in (0, 1)");
  const std::size_t m = p_values.size();
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw StatsError("benjamini-hochberg: p outside [0, 1]");
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

  // Largest rank k with p_(k) <= k q / m; ranks 1..k are rejected.
  std::size_t cutoff = 0;
  for (std::size_t k = m; k >= 1; --k) {
    if (p_values[order[k - 1]] <= static_cast<double>(k) * q / static_cast<double>(m)) {
      cutoff = k;
      break;
    }
  }

  std::vector<BhResult> out(m);
  double running = 1.0;
  for (std::size_t k = m; k >= 1; --k) {
    const std::size_t idx = order[k - 1];
    const double adj = p_values[idx] * static_cast<double>(m) / static_cast<double>(k);
    running = std::min(running, adj);
    out[idx].adjusted_p = std::min(1.0, running);
    out[idx].reject = k <= cutoff;
  }
  return out;
}

std::string_view MagnitudeName(Magnitude m) {
  switch (m) {
    case Magnitude::kNegligible:
      return "negligible";
    case Magnitude::kSmall:
      return "small";
    case Magnitude::kMedium:
      return "medium";
    case Magnitude::kLarge:
      return "large";
  }
  return "negligible";
}

Magnitude MagnitudeFor(double delta) {
  const double a = std::fabs(delta);
  if (a > 0.474) return Magnitude::kLarge;
  if (a > 0.33) return Magnitude::kMedium;
  if (a > 0.147) return Magnitude::kSmall;
  return Magnitude::kNegligible;
}

EffectSize CliffsDelta(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw StatsError("cliffs delta: empty sample");
  std::vector<double> sorted_y(y.begin(), y.end());
  std::sort(sorted_y.begin(), sorted_y.end());
  std::int64_t dominance = 0;
  for (double xi : x) {
    const auto lo = std::lower_bound(sorted_y.begin(), sorted_y.end(), xi);
    const auto hi = std::upper_bound(lo, sorted_y.end(), xi);
    dominance += static_cast<std::int64_t>(lo - sorted_y.begin());
    dominance -= static_cast<std::int64_t>(sorted_y.end() - hi);
  }
  EffectSize e;
  e.delta = static_cast<double>(dominance) /
            (static_cast<double>(x.size()) * static_cast<double>(y.size()));
  e.magnitude = MagnitudeFor(e.delta);
  return e;
}

Split StratifiedSplit(std::span<const std::string> labels, double train_fraction,
                      std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw StatsError("stratified split: train_fraction must lie in (0, 1)");
  }
  std::map<std::string, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < labels.size(); ++i) strata[labels[i]].push_back(i);
  for (const auto &[label, members] : strata) {
    if (members.size() < 2) {
      throw StatsError("stratified split: class '" + label + "' has fewer than 2 items");
    }
  }

  Rng rng(seed);
  Split split;
  for (auto &[label, members] : strata) {
    rng.Shuffle(std::span<std::size_t>(members));
    const std::size_t n = members.size();
    auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
    n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
    split.train.insert(split.train.end(), members.begin(), members.begin() + n_train);
    split.test.insert(split.test.end(), members.begin() + n_train, members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

const ClassMetrics &MetricsReport::ForLabel(std::string_view label) const {
  for (const auto &c : per_class) {
    if (c.label == label) return c;
  }
  throw std::out_of_range("no metrics for label " + std::string(label));
}

namespace {

double SafeRatio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double F1FromCounts(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  return SafeRatio(2 * tp, 2 * tp + fp + fn);
}

}  // namespace

MetricsReport ClassificationMetrics(std::span<const LabelSet> golds,
                                    std::span<const LabelSet> preds,
                                    std::span<const std::string> label_space,
                                    MetricsMode mode) {
  if (golds.size() != preds.size()) {
    throw StatsError("classification metrics: golds and preds differ in length");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < label_space.size(); ++i) {
    if (!index.emplace(label_space[i], i).second) {
      throw StatsError("classification metrics: duplicate label '" + label_space[i] + "'");
    }
  }
  auto check = [&](const LabelSet &set, const char *what, std::size_t row) {
    for (const auto &label : set) {
      if (!index.count(label)) {
        throw StatsError(std::string("classification metrics: unknown label '") + label +
                         "' in " + what + " row " + std::to_string(row));
      }
    }
    if (mode == MetricsMode::kMultiClass && set.size() != 1) {
      throw StatsError(std::string("classification metrics: multiclass ") + what + " row " +
                       std::to_string(row) + " must hold exactly one label");
    }
  };

  MetricsReport report;
  report.per_class.resize(label_space.size());
  for (std::size_t i = 0; i < label_space.size(); ++i) report.per_class[i].label = label_space[i];

  for (std::size_t row = 0; row < golds.size(); ++row) {
    check(golds[row], "golds", row);
    check(preds[row], "preds", row);
    for (const auto &label : preds[row]) {
      auto &c = report.per_class[index[label]];
      if (golds[row].count(label)) {
        ++c.tp;
      } else {
        ++c.fp;
      }
    }
    for (const auto &label : golds[row]) {
      if (!preds[row].count(label)) ++report.per_class[index[label]].fn;
    }
  }

  std::int64_t tp = 0, fp = 0, fn = 0;
  for (auto &c : report.per_class) {
    c.precision = SafeRatio(c.tp, c.tp + c.fp);
    c.recall = SafeRatio(c.tp, c.tp + c.fn);
    c.f1 = F1FromCounts(c.tp, c.fp, c.fn);
    tp += c.tp;
    fp += c.fp;
    fn += c.fn;
  }
  report.micro_precision = SafeRatio(tp, tp + fp);
  report.micro_recall = SafeRatio(tp, tp + fn);
  report.micro_f1 = F1FromCounts(tp, fp, fn);
  return report;
}

}  // namespace stats
}  // namespace figlang
