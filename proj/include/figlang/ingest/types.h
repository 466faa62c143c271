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

#ifndef FIGLANG_INGEST_TYPES_H_
#define FIGLANG_INGEST_TYPES_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "figlang/util/io.h"

namespace figlang {
namespace ingest {

enum class CommentKind { kIssue, kPullRequest };

std::string_view ToString(CommentKind k);
CommentKind ParseCommentKind(std::string_view s);

struct RawComment {
  std::string repo_slug;
  CommentKind kind = CommentKind::kIssue;
  std::string comment_id;
  std::string author;
  UtcTime created_at{};
  std::string body;

  bool operator==(const RawComment &) const = default;
};

struct CommentRef {
  std::string repo_slug;
  std::string comment_id;

  bool operator==(const CommentRef &) const = default;
};

struct Sentence {
  std::string sentence_id;
  CommentRef source_comment;
  std::string text;
  std::size_t word_count = 0;
  std::string preprocessed_text;

  bool operator==(const Sentence &) const = default;
};

struct CandidateSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;

  bool operator==(const CandidateSpan &) const = default;
};

enum class AffectScreen { kAffective, kNeutral, kUnscreened };

std::string_view ToString(AffectScreen a);
AffectScreen ParseAffectScreen(std::string_view s);

struct CandidateSentence {
  Sentence sentence;
  std::vector<CandidateSpan> metaphor_candidates;
  std::vector<CandidateSpan> idiom_candidates;
  AffectScreen affect_screen = AffectScreen::kUnscreened;
  // Set for unscreened items.
  std::string error;

  bool operator==(const CandidateSentence &) const = default;
};

// Canonical JSONL (sorted keys, one object per line).
std::string ToJsonl(const std::vector<RawComment> &comments);
std::string ToJsonl(const std::vector<Sentence> &sentences);
std::string ToJsonl(const std::vector<CandidateSentence> &candidates);
std::vector<RawComment> RawCommentsFromJsonl(std::string_view text);
std::vector<Sentence> SentencesFromJsonl(std::string_view text);
std::vector<CandidateSentence> CandidatesFromJsonl(std::string_view text);

// Raw comment store: JSONL file keyed by (repo_slug, comment_id). Merge
// keeps the first copy of every key and writes the union sorted by key.
class RawCommentStore {
 public:
  explicit RawCommentStore(std::filesystem::path path) : path_(std::move(path)) {}

  std::vector<RawComment> Load() const;
  // Returns the number of comments that were new.
  std::size_t Merge(const std::vector<RawComment> &comments) const;

 private:
  std::filesystem::path path_;
};

}  // namespace ingest
}  // namespace figlang

#endif  // FIGLANG_INGEST_TYPES_H_
