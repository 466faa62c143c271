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

#ifndef FIGLANG_FIGDATA_DATASET_H_
#define FIGLANG_FIGDATA_DATASET_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace figlang {
namespace figdata {

enum class Category { kMetaphor, kIdiom };
enum class Scope { kSeSpecific, kGeneral };

// Ordered workflow states; kRejected sits outside the order.
enum class Status {
  kScreened,
  kVerified,
  kEmsDone,
  kDmsCandidatesReady,
  kDmsSelected,
  kAdjudicated,
  kRejected,
};

enum class DmsChoice { kC1, kC2, kC3, kC4, kNoneCustom };

std::string_view ToString(Category c);
std::string_view ToString(Scope s);
std::string_view ToString(Status s);
std::string_view ToString(DmsChoice c);
// Throw std::invalid_argument on unknown names.
Category ParseCategory(std::string_view s);
Scope ParseScope(std::string_view s);
Status ParseStatus(std::string_view s);
DmsChoice ParseDmsChoice(std::string_view s);

// True when `s` has reached `threshold` in the workflow order. A rejected
// item reaches nothing but kRejected.
bool AtLeast(Status s, Status threshold);

// Byte offsets into the owning sentence, half-open.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const Span &) const = default;
};

struct FigurativeExpression {
  std::string surface;
  Span span;
  Category category = Category::kMetaphor;
  Scope scope = Scope::kGeneral;
  bool verified = false;

  bool operator==(const FigurativeExpression &) const = default;
};

struct Provenance {
  std::string repo_slug;
  std::string comment_id;
  std::string sentence_id;

  bool empty() const { return repo_slug.empty() && comment_id.empty() && sentence_id.empty(); }
  bool operator==(const Provenance &) const = default;
};

// Candidates c1, c2 come from the literal-use prompt and c3, c4 from the
// replacement prompt.
inline constexpr std::size_t kDmsCandidateCount = 4;

struct AnnotatedSentence {
  std::string id;
  std::string original;
  std::vector<FigurativeExpression> expressions;
  std::optional<std::string> ems;
  std::optional<std::string> dms;
  std::vector<std::string> dms_candidates;
  std::optional<DmsChoice> dms_choice;
  Status status = Status::kScreened;
  Provenance provenance;
  // Set when an automated step parked the item.
  std::optional<std::string> note;

  bool operator==(const AnnotatedSentence &) const = default;
};

// Schema or invariant violation. `line` is 1-based (0 when not from a file).
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::size_t line, std::string field, const std::string &message);

  std::size_t line() const { return line_; }
  const std::string &field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// Throws SchemaError naming the offending field.
void ValidateItem(const AnnotatedSentence &item, std::size_t line = 0);

// Canonical form: UTF-8, sorted keys, one compact object per line,
// absent optionals omitted, trailing newline.
std::string ToCanonicalJsonl(const std::vector<AnnotatedSentence> &items);
std::vector<AnnotatedSentence> ParseJsonl(std::string_view text);

std::vector<AnnotatedSentence> LoadDataset(const std::filesystem::path &path);
void SaveDataset(const std::vector<AnnotatedSentence> &items, const std::filesystem::path &path);

// Verified expressions only.
std::vector<const FigurativeExpression *> VerifiedExpressions(const AnnotatedSentence &item);

}  // namespace figdata
}  // namespace figlang

#endif  // FIGLANG_FIGDATA_DATASET_H_
