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

#ifndef FIGLANG_FIGDATA_TRIPLETS_H_
#define FIGLANG_FIGDATA_TRIPLETS_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "figlang/figdata/dataset.h"

namespace figlang {
namespace figdata {

enum class Orientation { kOrigAnchor, kEmsAnchor };

std::string_view ToString(Orientation o);
Orientation ParseOrientation(std::string_view s);

struct TripletRecord {
  std::string anchor;
  std::string positive;
  std::string negative;
  std::string source_id;
  Orientation orientation = Orientation::kOrigAnchor;

  bool operator==(const TripletRecord &) const = default;
};

struct TripletBuild {
  std::vector<TripletRecord> triplets;
  // Ids of items left out (below dms_selected, missing ems/dms, or with
  // a negative equal to the original or the ems).
  std::vector<std::string> skipped;
};

// Two triplets per eligible item, (original, ems, dms) then
// (ems, original, dms), ordered by source id.
TripletBuild BuildTriplets(const std::vector<AnnotatedSentence> &dataset);

std::string TripletsToJsonl(const std::vector<TripletRecord> &triplets);
std::vector<TripletRecord> TripletsFromJsonl(std::string_view text);
void SaveTriplets(const std::vector<TripletRecord> &triplets, const std::filesystem::path &path);
std::vector<TripletRecord> LoadTriplets(const std::filesystem::path &path);

struct DatasetStats {
  std::size_t n_sentences = 0;
  std::size_t n_metaphor_sentences = 0;
  std::size_t n_idiom_sentences = 0;
  std::size_t n_rejected = 0;
  std::size_t n_unique_expressions = 0;
  std::size_t n_se_specific = 0;
  std::size_t n_general = 0;
  // Sentences by the scopes of their verified expressions.
  std::size_t n_se_only_sentences = 0;
  std::size_t n_general_only_sentences = 0;
  std::size_t n_both_scope_sentences = 0;

  bool operator==(const DatasetStats &) const = default;
};

// Unique expressions are keyed by their lemmatized, case-folded surface;
// a key takes the scope of its first occurrence in id order.
DatasetStats ComputeDatasetStats(const std::vector<AnnotatedSentence> &dataset);

enum class SentenceScope { kSeSpecific, kGeneral, kBoth, kNone };

std::string_view ToString(SentenceScope s);

// Scope tag of a sentence from its verified expressions.
SentenceScope ScopeOf(const AnnotatedSentence &item);

}  // namespace figdata
}  // namespace figlang

#endif  // FIGLANG_FIGDATA_TRIPLETS_H_
