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

#ifndef FIGLANG_INGEST_TEXT_H_
#define FIGLANG_INGEST_TEXT_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "figlang/ingest/types.h"

namespace figlang {
namespace ingest {

// Sentence texts of a comment body. Fenced code blocks and HTML comments
// are dropped; blank lines and list items start new blocks, headings,
// table rows and stack-trace lines form blocks of their own, and other
// line breaks are joined with a space. Inside a
// block, '.', '!' and '?' end a sentence when followed by whitespace,
// except after known abbreviations, single initials and before a
// lower-case word.
std::vector<std::string> SplitSentenceTexts(std::string_view body);

// SplitSentenceTexts wrapped into Sentence records with ids
// "<comment_id>-<n>" (1-based), word counts and preprocessed text.
std::vector<Sentence> SplitSentences(const RawComment &comment);

std::size_t WordCount(std::string_view text);

// Sentences with at least `min_words` whitespace tokens, order kept.
// Throws std::invalid_argument when min_words is 0.
std::vector<Sentence> FilterShort(const std::vector<Sentence> &sentences, std::size_t min_words = 5);

// ECMAScript regexes; a line matching any of them is a stack-trace line.
std::vector<std::string> DefaultStackTracePatterns();

struct PreprocessConfig {
  std::vector<std::string> stack_trace_patterns = DefaultStackTracePatterns();
  // Also drop the indented body and closing exception line of Python
  // "Traceback (most recent call last):" blocks.
  bool python_traceback_blocks = true;
};

// Line classifier used by PreprocessSeText.
class StackTraceFilter {
 public:
  explicit StackTraceFilter(const PreprocessConfig &cfg = {});
  ~StackTraceFilter();
  StackTraceFilter(const StackTraceFilter &) = delete;
  StackTraceFilter &operator=(const StackTraceFilter &) = delete;

  // One flag per input line: true when the line belongs to a trace.
  std::vector<bool> Classify(const std::vector<std::string> &lines) const;
  bool MatchesLine(std::string_view line) const;

 private:
  struct Impl;
  std::unique_ptr<const Impl> impl_;
  bool python_blocks_;
};

// Removes stack-trace lines, URLs and @-mentions; remaining tokens are
// joined by single spaces in their original order.
std::string PreprocessSeText(std::string_view text, const StackTraceFilter &filter);
std::string PreprocessSeText(std::string_view text);

}  // namespace ingest
}  // namespace figlang

#endif  // FIGLANG_INGEST_TEXT_H_
