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

#include "figlang/figdata/triplets.h"

#include <algorithm>
#include <map>

#include <spdlog/spdlog.h>

#include "json.hpp"

#include "figlang/prevalence/normalize.h"
#include "figlang/util/io.h"

namespace figlang {
namespace figdata {

std::string_view ToString(Orientation o) {
  return o == Orientation::kOrigAnchor ? "orig_anchor" : "ems_anchor";
}

Orientation ParseOrientation(std::string_view s) {
  if (s == "orig_anchor") return Orientation::kOrigAnchor;
  if (s == "ems_anchor") return Orientation::kEmsAnchor;
  throw std::invalid_argument("unknown orientation '" + std::string(s) + "'");
}

TripletBuild BuildTriplets(const std::vector<AnnotatedSentence> &dataset) {
  std::vector<const AnnotatedSentence *> order;
  order.reserve(dataset.size());
  for (const auto &item : dataset) order.push_back(&item);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto *a, const auto *b) { return a->id < b->id; });

  TripletBuild out;
  for (const auto *item : order) {
    const bool eligible = AtLeast(item->status, Status::kDmsSelected) && item->ems && item->dms &&
                          *item->dms != item->original && *item->dms != *item->ems;
    if (!eligible) {
      out.skipped.push_back(item->id);
      continue;
    }
    out.triplets.push_back({item->original, *item->ems, *item->dms, item->id, Orientation::kOrigAnchor});
    out.triplets.push_back({*item->ems, item->original, *item->dms, item->id, Orientation::kEmsAnchor});
  }
  if (!out.skipped.empty()) {
    spdlog::warn("build_triplets: skipped {} of {} items", out.skipped.size(), dataset.size());
  }
  return out;
}

std::string TripletsToJsonl(const std::vector<TripletRecord> &triplets) {
  std::string out;
  for (const auto &t : triplets) {
    const nlohmann::json j = {{"anchor", t.anchor},
                              {"positive", t.positive},
                              {"negative", t.negative},
                              {"source_id", t.source_id},
                              {"orientation", std::string(ToString(t.orientation))}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<TripletRecord> TripletsFromJsonl(std::string_view text) {
  std::vector<TripletRecord> out;
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
      out.push_back({j.at("anchor").get<std::string>(), j.at("positive").get<std::string>(),
                     j.at("negative").get<std::string>(), j.at("source_id").get<std::string>(),
                     ParseOrientation(j.at("orientation").get<std::string>())});
    } catch (const std::exception &e) {
      throw SchemaError(line_no, "<triplet>", e.what());
    }
  }
  return out;
}

void SaveTriplets(const std::vector<TripletRecord> &triplets, const std::filesystem::path &path) {
  WriteFileAtomic(path, TripletsToJsonl(triplets));
}

std::vector<TripletRecord> LoadTriplets(const std::filesystem::path &path) {
  return TripletsFromJsonl(ReadFile(path));
}

std::string_view ToString(SentenceScope s) {
  switch (s) {
    case SentenceScope::kSeSpecific: return "se_specific";
    case SentenceScope::kGeneral: return "general";
    case SentenceScope::kBoth: return "both";
    case SentenceScope::kNone: break;
  }
  return "none";
}

SentenceScope ScopeOf(const AnnotatedSentence &item) {
  bool se = false;
  bool general = false;
  for (const auto *e : VerifiedExpressions(item)) {
    (e->scope == Scope::kSeSpecific ? se : general) = true;
  }
  if (se && general) return SentenceScope::kBoth;
  if (se) return SentenceScope::kSeSpecific;
  if (general) return SentenceScope::kGeneral;
  return SentenceScope::kNone;
}

DatasetStats ComputeDatasetStats(const std::vector<AnnotatedSentence> &dataset) {
  std::vector<const AnnotatedSentence *> order;
  for (const auto &item : dataset) order.push_back(&item);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto *a, const auto *b) { return a->id < b->id; });

  DatasetStats stats;
  std::map<std::string, Scope> unique;
  for (const auto *item : order) {
    ++stats.n_sentences;
    if (item->status == Status::kRejected) {
      ++stats.n_rejected;
      continue;
    }
    bool metaphor = false;
    bool idiom = false;
    for (const auto *e : VerifiedExpressions(*item)) {
      (e->category == Category::kMetaphor ? metaphor : idiom) = true;
      unique.emplace(prevalence::MatchKey(e->surface), e->scope);
    }
    stats.n_metaphor_sentences += metaphor;
    stats.n_idiom_sentences += idiom;
    switch (ScopeOf(*item)) {
      case SentenceScope::kSeSpecific: ++stats.n_se_only_sentences; break;
      case SentenceScope::kGeneral: ++stats.n_general_only_sentences; break;
      case SentenceScope::kBoth: ++stats.n_both_scope_sentences; break;
      case SentenceScope::kNone: break;
    }
  }
  stats.n_unique_expressions = unique.size();
  for (const auto &[key, scope] : unique) {
    (scope == Scope::kSeSpecific ? stats.n_se_specific : stats.n_general) += 1;
  }
  return stats;
}

}  // namespace figdata
}  // namespace figlang
