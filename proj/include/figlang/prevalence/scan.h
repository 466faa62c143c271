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

#ifndef FIGLANG_PREVALENCE_SCAN_H_
#define FIGLANG_PREVALENCE_SCAN_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "figlang/ingest/detect.h"
#include "figlang/prevalence/matcher.h"

namespace figlang {
namespace prevalence {

struct CorpusSentence {
  std::string repo_slug;
  std::string sentence_id;
  std::string text;
};

// JSONL with either flat {"repo_slug", "text"[, "sentence_id"]} records
// or sentence records whose repo sits under source_comment.
std::vector<CorpusSentence> ParseCorpusJsonl(std::string_view text);
std::vector<CorpusSentence> LoadCorpus(const std::filesystem::path &path);

struct RepoCounts {
  std::size_t sentences = 0;
  std::size_t with_se_specific = 0;
  std::size_t with_general = 0;
  std::size_t with_both = 0;

  bool operator==(const RepoCounts &) const = default;
};

// Mergeable scan state; merging is associative and commutative.
struct PrevalenceCounts {
  std::map<std::string, RepoCounts> repos;
  // Confirmed occurrences per expression id.
  std::map<std::string, std::size_t> frequency;
  std::size_t matches_found = 0;
  std::size_t matches_unconfirmed = 0;
  std::size_t confirmer_failures = 0;

  void Merge(const PrevalenceCounts &other);
  bool operator==(const PrevalenceCounts &) const = default;
};

using Confirmers = std::vector<ingest::DetectorAdapter *>;

// A match counts when any confirmer returns a span overlapping it (all
// matches count when `confirmers` is empty). A failing confirmer
// confirms nothing for its batch and is logged.
PrevalenceCounts ScanShard(std::span<const CorpusSentence> shard, const Matcher &matcher,
                           const Confirmers &confirmers, std::size_t batch_size = 256);

struct RepoPrevalence {
  std::string repo_slug;
  std::size_t sentences_total = 0;
  double pct_with_se_specific = 0.0;
  double pct_with_general = 0.0;
};

struct FrequencyRow {
  std::string expression_id;
  std::string surface;
  figdata::Scope scope = figdata::Scope::kGeneral;
  std::size_t count = 0;
};

struct LowFrequencyShare {
  std::size_t expressions = 0;
  std::size_t at_or_below = 0;
  // at_or_below / expressions, 0 for an empty scope.
  double share = 0.0;
};

struct PrevalenceReport {
  std::vector<RepoPrevalence> repos;
  std::size_t sentences_total = 0;
  std::size_t sentences_matched_se = 0;
  std::size_t sentences_matched_general = 0;
  std::size_t sentences_matched_both = 0;
  double pct_se = 0.0;
  double pct_general = 0.0;
  double pct_both = 0.0;
  // Every lexicon entry, most frequent first, ties by id.
  std::vector<FrequencyRow> frequency;
  std::size_t low_freq_threshold = 10;
  LowFrequencyShare low_frequency_se;
  LowFrequencyShare low_frequency_general;
  LowFrequencyShare low_frequency_all;
  std::size_t matches_found = 0;
  std::size_t matches_unconfirmed = 0;
  std::size_t confirmer_failures = 0;
};

// Percentages are 100 * count / total (0 when total is 0).
PrevalenceReport Finalize(const PrevalenceCounts &counts, const std::vector<LexiconEntry> &entries,
                          std::size_t low_freq_threshold = 10);

PrevalenceReport Scan(std::span<const CorpusSentence> corpus, const Matcher &matcher,
                      const Confirmers &confirmers, std::size_t low_freq_threshold = 10);

// Writes repo_prevalence.csv, overall.csv, expression_frequency.csv,
// repo_percentages.tsv (chart data: repo, percent, series) and
// frequency_histogram.tsv (count histogram plus the threshold marker).
// Returns the written paths.
std::vector<std::filesystem::path> WriteReport(const PrevalenceReport &report,
                                               const std::filesystem::path &dir);

}  // namespace prevalence
}  // namespace figlang

#endif  // FIGLANG_PREVALENCE_SCAN_H_
