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

#ifndef FIGLANG_PREVALENCE_NORMALIZE_H_
#define FIGLANG_PREVALENCE_NORMALIZE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace figlang {
namespace prevalence {

// Maps a lower-case word to its lemma.
class Lemmatizer {
 public:
  virtual ~Lemmatizer() = default;
  virtual std::string Lemma(std::string_view word) const = 0;
};

// Offline English fallback: an irregular-form table plus suffix rules
// for plurals and -s/-ed/-ing verb forms.
class RuleLemmatizer : public Lemmatizer {
 public:
  std::string Lemma(std::string_view word) const override;
};

// Lookup table of form -> lemma (for instance exported from an external
// lemmatizer); unknown forms go to the fallback.
class TableLemmatizer : public Lemmatizer {
 public:
  TableLemmatizer(std::map<std::string, std::string, std::less<>> table,
                  std::shared_ptr<const Lemmatizer> fallback);

  // Tab-separated "form<TAB>lemma" lines; '#' starts a comment line.
  static TableLemmatizer FromTsv(const std::filesystem::path &path,
                                 std::shared_ptr<const Lemmatizer> fallback);

  std::string Lemma(std::string_view word) const override;

 private:
  std::map<std::string, std::string, std::less<>> table_;
  std::shared_ptr<const Lemmatizer> fallback_;
};

const Lemmatizer &DefaultLemmatizer();

struct LemmaToken {
  std::string lemma;
  // Byte range of the source word.
  std::size_t start = 0;
  std::size_t end = 0;
};

// Lower-cases, splits on anything that is not a letter (hyphens, digits
// and punctuation all separate words and are dropped), removes in-word
// apostrophes and lemmatizes each word. Bytes >= 0x80 count as letters.
std::vector<LemmaToken> NormalizeWithOffsets(std::string_view text,
                                             const Lemmatizer &lemmatizer = DefaultLemmatizer());

std::vector<std::string> NormalizeForMatching(std::string_view text,
                                              const Lemmatizer &lemmatizer = DefaultLemmatizer());

// Lemmas joined by single spaces.
std::string MatchKey(std::string_view text, const Lemmatizer &lemmatizer = DefaultLemmatizer());

}  // namespace prevalence
}  // namespace figlang

#endif  // FIGLANG_PREVALENCE_NORMALIZE_H_
