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

#ifndef FIGLANG_PREVALENCE_MATCHER_H_
#define FIGLANG_PREVALENCE_MATCHER_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "figlang/figdata/dataset.h"
#include "figlang/prevalence/normalize.h"

namespace figlang {
namespace prevalence {

struct LexiconEntry {
  std::string expression_id;
  std::string surface;
  std::vector<std::string> lemmas;
  figdata::Scope scope = figdata::Scope::kGeneral;
};

struct ExpressionLexicon {
  std::vector<LexiconEntry> entries;
};

// CSV with header expression_id,surface,scope. Lemmas come from
// `lemmatizer`. Throws IoError on malformed rows, empty lemma sequences
// and repeated ids.
ExpressionLexicon LoadLexiconCsv(const std::filesystem::path &path,
                                 const Lemmatizer &lemmatizer = DefaultLemmatizer());
ExpressionLexicon ParseLexiconCsv(std::string_view text,
                                  const Lemmatizer &lemmatizer = DefaultLemmatizer());
std::string LexiconToCsv(const ExpressionLexicon &lexicon);

// Unique verified expressions of a dataset keyed like dataset stats,
// with ids "fx0001", ... in key order.
ExpressionLexicon LexiconFromDataset(const std::vector<figdata::AnnotatedSentence> &dataset,
                                     const Lemmatizer &lemmatizer = DefaultLemmatizer());

struct Match {
  // Index into Matcher::entries().
  std::size_t entry = 0;
  // Token range in the lemma sequence, half-open.
  std::size_t token_begin = 0;
  std::size_t token_end = 0;
  // Byte range in the source sentence (only set by Matcher::Find).
  std::size_t byte_start = 0;
  std::size_t byte_end = 0;
};

// Aho-Corasick automaton over lemma ids. Reports, for every start
// position, the longest lexicon sequence beginning there, then drops
// matches lying inside another reported match.
class Matcher {
 public:
  // Throws std::invalid_argument on an empty lexicon. Entries with a
  // lemma sequence seen before are collapsed into the first (logged).
  // `lemmatizer` must outlive the matcher.
  explicit Matcher(const ExpressionLexicon &lexicon, const Lemmatizer &lemmatizer = DefaultLemmatizer());

  std::vector<Match> FindInLemmas(const std::vector<std::string> &lemmas) const;
  std::vector<Match> Find(std::string_view sentence) const;

  const std::vector<LexiconEntry> &entries() const { return entries_; }
  std::size_t collapsed() const { return collapsed_; }

 private:
  struct Node {
    std::unordered_map<int, int> next;
    int fail = 0;
    // Longest pattern ending here (entry index), or -1.
    int pattern = -1;
    // Nearest node along the fail chain that ends a pattern, or -1.
    int output = -1;
    int depth = 0;
  };

  int Step(int state, int symbol) const;

  std::vector<LexiconEntry> entries_;
  std::size_t collapsed_ = 0;
  std::unordered_map<std::string, int> symbols_;
  std::vector<Node> nodes_;
  const Lemmatizer &lemmatizer_;
};

}  // namespace prevalence
}  // namespace figlang

#endif  // FIGLANG_PREVALENCE_MATCHER_H_
