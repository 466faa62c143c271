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

#include "figlang/prevalence/scan.h"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "json.hpp"

#include "figlang/util/io.h"

namespace figlang {
namespace prevalence {

namespace {

double Percent(std::size_t count, std::size_t total) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(total);
}

LowFrequencyShare Share(std::size_t expressions, std::size_t at_or_below) {
  return {expressions, at_or_below,
          expressions == 0 ? 0.0 : static_cast<double>(at_or_below) / static_cast<double>(expressions)};
}

}  // namespace

std::vector<CorpusSentence> ParseCorpusJsonl(std::string_view text) {
  std::vector<CorpusSentence> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string line = Trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      CorpusSentence s;
      s.text = j.at("text").get<std::string>();
      if (j.contains("repo_slug")) {
        s.repo_slug = j["repo_slug"].get<std::string>();
      } else {
        s.repo_slug = j.at("source_comment").at("repo_slug").get<std::string>();
      }
      s.sentence_id = j.value("sentence_id", "line-" + std::to_string(line_no));
      out.push_back(std::move(s));
    } catch (const std::exception &e) {
      throw IoError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<CorpusSentence> LoadCorpus(const std::filesystem::path &path) {
  return ParseCorpusJsonl(ReadFile(path));
}

void PrevalenceCounts::Merge(const PrevalenceCounts &other) {
  for (const auto &[repo, c] : other.repos) {
    auto &mine = repos[repo];
    mine.sentences += c.sentences;
    mine.with_se_specific += c.with_se_specific;
    mine.with_general += c.with_general;
    mine.with_both += c.with_both;
  }
  for (const auto &[id, n] : other.frequency) frequency[id] += n;
  matches_found += other.matches_found;
  matches_unconfirmed += other.matches_unconfirmed;
  confirmer_failures += other.confirmer_failures;
}

PrevalenceCounts ScanShard(std::span<const CorpusSentence> shard, const Matcher &matcher,
                           const Confirmers &confirmers, std::size_t batch_size) {
  if (batch_size == 0) batch_size = 1;
  PrevalenceCounts counts;
  for (std::size_t begin = 0; begin < shard.size(); begin += batch_size) {
    const std::size_t end = std::min(shard.size(), begin + batch_size);
    std::vector<std::vector<Match>> matches(end - begin);
    std::vector<std::string> matched_texts;
    std::vector<std::size_t> matched_index;
    for (std::size_t i = begin; i < end; ++i) {
      matches[i - begin] = matcher.Find(shard[i].text);
      counts.matches_found += matches[i - begin].size();
      if (!matches[i - begin].empty()) {
        matched_texts.push_back(shard[i].text);
        matched_index.push_back(i - begin);
      }
    }

    // confirmed[k][m]: match m of the k-th matched sentence.
    std::vector<std::vector<bool>> confirmed(matched_index.size());
    for (std::size_t k = 0; k < matched_index.size(); ++k) {
      confirmed[k].assign(matches[matched_index[k]].size(), confirmers.empty());
    }
    if (!matched_texts.empty()) {
      for (auto *confirmer : confirmers) {
        std::vector<ingest::DetectorVerdict> verdicts;
        try {
          verdicts = confirmer->Detect(matched_texts);
          if (verdicts.size() != matched_texts.size()) throw ingest::DetectorError("verdict count mismatch");
        } catch (const ingest::DetectorError &e) {
          ++counts.confirmer_failures;
          spdlog::warn("prevalence: confirmer {} failed: {}", confirmer->Name(), e.what());
          continue;
        }
        for (std::size_t k = 0; k < matched_index.size(); ++k) {
          const auto &ms = matches[matched_index[k]];
          for (std::size_t m = 0; m < ms.size(); ++m) {
            for (const auto &span : verdicts[k].spans) {
              if (span.start < ms[m].byte_end && ms[m].byte_start < span.end) {
                confirmed[k][m] = true;
                break;
              }
            }
          }
        }
      }
    }

    std::vector<bool> se(end - begin, false), general(end - begin, false);
    for (std::size_t k = 0; k < matched_index.size(); ++k) {
      const std::size_t local = matched_index[k];
      const auto &ms = matches[local];
      for (std::size_t m = 0; m < ms.size(); ++m) {
        if (!confirmed[k][m]) {
          ++counts.matches_unconfirmed;
          continue;
        }
        const auto &entry = matcher.entries()[ms[m].entry];
        ++counts.frequency[entry.expression_id];
        (entry.scope == figdata::Scope::kSeSpecific ? se : general)[local] = true;
      }
    }
    for (std::size_t i = begin; i < end; ++i) {
      auto &repo = counts.repos[shard[i].repo_slug];
      ++repo.sentences;
      repo.with_se_specific += se[i - begin];
      repo.with_general += general[i - begin];
      repo.with_both += se[i - begin] && general[i - begin];
    }
  }
  return counts;
}

PrevalenceReport Finalize(const PrevalenceCounts &counts, const std::vector<LexiconEntry> &entries,
                          std::size_t low_freq_threshold) {
  PrevalenceReport report;
  report.low_freq_threshold = low_freq_threshold;
  for (const auto &[repo, c] : counts.repos) {
    report.repos.push_back({repo, c.sentences, Percent(c.with_se_specific, c.sentences),
                            Percent(c.with_general, c.sentences)});
    report.sentences_total += c.sentences;
    report.sentences_matched_se += c.with_se_specific;
    report.sentences_matched_general += c.with_general;
    report.sentences_matched_both += c.with_both;
  }
  report.pct_se = Percent(report.sentences_matched_se, report.sentences_total);
  report.pct_general = Percent(report.sentences_matched_general, report.sentences_total);
  report.pct_both = Percent(report.sentences_matched_both, report.sentences_total);

  std::size_t se_total = 0, se_low = 0, general_total = 0, general_low = 0;
  for (const auto &e : entries) {
    const auto it = counts.frequency.find(e.expression_id);
    const std::size_t n = it == counts.frequency.end() ? 0 : it->second;
    report.frequency.push_back({e.expression_id, e.surface, e.scope, n});
    const bool low = n <= low_freq_threshold;
    if (e.scope == figdata::Scope::kSeSpecific) {
      ++se_total;
      se_low += low;
    } else {
      ++general_total;
      general_low += low;
    }
  }
  std::sort(report.frequency.begin(), report.frequency.end(), [](const auto &a, const auto &b) {
    return a.count != b.count ? a.count > b.count : a.expression_id < b.expression_id;
  });
  report.low_frequency_se = Share(se_total, se_low);
  report.low_frequency_general = Share(general_total, general_low);
  report.low_frequency_all = Share(se_total + general_total, se_low + general_low);
  report.matches_found = counts.matches_found;
  report.matches_unconfirmed = counts.matches_unconfirmed;
  report.confirmer_failures = counts.confirmer_failures;
  return report;
}

PrevalenceReport Scan(std::span<const CorpusSentence> corpus, const Matcher &matcher,
                      const Confirmers &confirmers, std::size_t low_freq_threshold) {
  return Finalize(ScanShard(corpus, matcher, confirmers), matcher.entries(), low_freq_threshold);
}

std::vector<std::filesystem::path> WriteReport(const PrevalenceReport &report,
                                               const std::filesystem::path &dir) {
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::string &name, const std::string &data) {
    WriteFileAtomic(dir / name, data);
    written.push_back(dir / name);
  };

  std::string repos = "repo_slug,sentences_total,pct_with_se_specific,pct_with_general\n";
  std::string chart = "repo\tpercent\tseries\n";
  for (const auto &r : report.repos) {
    repos += CsvEscape(r.repo_slug) + "," + std::to_string(r.sentences_total) + "," +
             FormatFixed(r.pct_with_se_specific, 4) + "," + FormatFixed(r.pct_with_general, 4) + "\n";
    chart += r.repo_slug + "\t" + FormatFixed(r.pct_with_se_specific, 4) + "\tse_specific\n";
    chart += r.repo_slug + "\t" + FormatFixed(r.pct_with_general, 4) + "\tgeneral\n";
  }
  write("repo_prevalence.csv", repos);
  write("repo_percentages.tsv", chart);

  std::string overall = "metric,value\n";
  auto row = [&](const std::string &k, const std::string &v) { overall += k + "," + v + "\n"; };
  row("sentences_total", std::to_string(report.sentences_total));
  row("sentences_matched_se_specific", std::to_string(report.sentences_matched_se));
  row("sentences_matched_general", std::to_string(report.sentences_matched_general));
  row("sentences_matched_both", std::to_string(report.sentences_matched_both));
  row("pct_se_specific", FormatFixed(report.pct_se, 4));
  row("pct_general", FormatFixed(report.pct_general, 4));
  row("pct_both", FormatFixed(report.pct_both, 4));
  row("low_freq_threshold", std::to_string(report.low_freq_threshold));
  row("low_frequency_share_se_specific", FormatFixed(report.low_frequency_se.share, 6));
  row("low_frequency_share_general", FormatFixed(report.low_frequency_general.share, 6));
  row("low_frequency_share_all", FormatFixed(report.low_frequency_all.share, 6));
  row("matches_found", std::to_string(report.matches_found));
  row("matches_unconfirmed", std::to_string(report.matches_unconfirmed));
  row("confirmer_failures", std::to_string(report.confirmer_failures));
  write("overall.csv", overall);

  std::string freq = "expression_id,surface,scope,count\n";
  for (const auto &f : report.frequency) {
    freq += CsvEscape(f.expression_id) + "," + CsvEscape(f.surface) + "," +
            std::string(figdata::ToString(f.scope)) + "," + std::to_string(f.count) + "\n";
  }
  write("expression_frequency.csv", freq);

  std::map<std::pair<std::size_t, std::string>, std::size_t> histogram;
  for (const auto &f : report.frequency) ++histogram[{f.count, std::string(figdata::ToString(f.scope))}];
  std::string hist = "# threshold\t" + std::to_string(report.low_freq_threshold) + "\n";
  hist += "occurrences\tscope\texpressions\n";
  for (const auto &[key, n] : histogram) {
    hist += std::to_string(key.first) + "\t" + key.second + "\t" + std::to_string(n) + "\n";
  }
  write("frequency_histogram.tsv", hist);
  return written;
}

}  // namespace prevalence
}  // namespace figlang
