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

#ifndef FIGLANG_EMBED_RQ1_H_
#define FIGLANG_EMBED_RQ1_H_

#include <filesystem>
#include <string>
#include <vector>

#include "figlang/embed/encoder.h"
#include "figlang/embed/geometry.h"
#include "figlang/figdata/dataset.h"
#include "figlang/stats/stats.h"

namespace figlang {
namespace embed {

// Scope mix of a sentence's verified expressions.
enum class ItemCategory { kSeSpecific, kGeneral, kBoth };

std::string_view ToString(ItemCategory c);

struct SimilarityComparison {
  std::string item_id;
  ItemCategory category = ItemCategory::kGeneral;
  double sim_ems = 0.0;
  double sim_dms = 0.0;
};

// One column group of the results table.
struct CategoryResult {
  std::string name;
  std::size_t n = 0;
  double percent_ems_wins = 0.0;
  // One-tailed Wilcoxon, raw and after Benjamini-Hochberg.
  double p_value = 1.0;
  double p_adjusted = 1.0;
  bool reject = false;
  // False when every difference is zero or the category is empty.
  bool test_defined = false;
  double cliffs_delta_abs = 0.0;
  stats::Magnitude magnitude = stats::Magnitude::kNegligible;
};

struct Rq1Config {
  SvtConfig svt;
  // Run the SE text cleaner over original, EMS and DMS first.
  bool preprocess = true;
  double fdr_q = 0.05;
};

struct Exclusion {
  std::string item_id;
  std::string reason;
};

struct Rq1Report {
  std::string model;
  Rq1Config config;
  // se_specific, general, overall in that order.
  std::vector<CategoryResult> categories;
  // Items that contain both scopes; counted only in overall.
  std::size_t n_both = 0;
  std::vector<Exclusion> excluded;

  const CategoryResult &Category(std::string_view name) const;
};

struct Rq1Result {
  Rq1Report report;
  // Sorted by item id.
  std::vector<SimilarityComparison> comparisons;
};

// Encodes original, EMS and DMS of every usable item, mean-pools, applies
// SVT to the joint batch of all pooled vectors, then compares
// cos(original, EMS) with cos(original, DMS). Ties are not wins. Items are
// processed in id order, so the result does not depend on input order.
// Items without EMS/DMS, without a verified expression, or whose encoding
// fails are excluded and listed.
Rq1Result EvaluateRq1(const std::vector<figdata::AnnotatedSentence> &dataset,
                      const EncoderAdapter &encoder, const Rq1Config &cfg = {});

// Fills the category statistics of a report from comparisons, with
// Benjamini-Hochberg over the report's own three tests.
Rq1Report SummarizeComparisons(const std::vector<SimilarityComparison> &comparisons,
                               const std::string &model, const Rq1Config &cfg);

// Re-applies Benjamini-Hochberg over every test of every report, for
// tables that put several models side by side.
void AdjustAcrossReports(std::vector<Rq1Report> &reports, double q);

// "p < 0.01" below 0.01, otherwise "p = 0.xxx".
std::string FormatPValue(double p);

std::string ComparisonsCsv(const std::vector<SimilarityComparison> &comparisons);
std::string Rq1ReportCsv(const std::vector<Rq1Report> &reports);
// Model rows with percent, p-value and |delta| per column group.
std::string RenderRq1Table(const std::vector<Rq1Report> &reports);

// Writes comparisons.csv, rq1_report.csv and rq1_table.txt; returns the
// paths written.
std::vector<std::filesystem::path> WriteRq1(const Rq1Result &result, const std::filesystem::path &dir);

}  // namespace embed
}  // namespace figlang

#endif  // FIGLANG_EMBED_RQ1_H_
