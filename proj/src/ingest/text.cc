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

#include "figlang/ingest/text.h"

#include <array>
#include <cctype>
#include <iterator>
#include <regex>
#include <stdexcept>

namespace figlang {
namespace ingest {

namespace {

constexpr std::array<std::string_view, 28> kAbbreviations = {
    "e.g", "i.e", "etc", "vs", "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "wrt", "approx", "cf",
    "fig", "vol", "al", "inc", "ltd", "jan", "esp", "resp", "feb", "aug", "sept", "oct", "nov", "dec"};

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

std::vector<std::string> Lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(pos, nl - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    pos = nl + 1;
  }
  return lines;
}

bool IsFence(std::string_view trimmed) {
  return trimmed.rfind("```", 0) == 0 || trimmed.rfind("~~~", 0) == 0;
}

bool StartsBlock(std::string_view trimmed) {
  if (trimmed.empty()) return false;
  if (trimmed[0] == '#' || trimmed[0] == '>' || trimmed[0] == '|') return true;
  if ((trimmed[0] == '-' || trimmed[0] == '*' || trimmed[0] == '+') && trimmed.size() > 1 &&
      trimmed[1] == ' ') {
    return true;
  }
  std::size_t i = 0;
  while (i < trimmed.size() && std::isdigit(static_cast<unsigned char>(trimmed[i]))) ++i;
  return i > 0 && i + 1 < trimmed.size() && (trimmed[i] == '.' || trimmed[i] == ')') &&
         trimmed[i + 1] == ' ';
}

// Blocks of prose after markup removal.
std::vector<std::string> Blocks(std::string_view body) {
  std::string text(body);
  for (std::size_t open; (open = text.find("<!--")) != std::string::npos;) {
    const auto close = text.find("-->", open + 4);
    text.erase(open, close == std::string::npos ? std::string::npos : close + 3 - open);
  }
  static const StackTraceFilter *trace_filter = new StackTraceFilter();
  std::vector<std::string> blocks;
  std::string current;
  auto flush = [&]() {
    const std::string t = Trim(current);
    if (!t.empty()) blocks.push_back(t);
    current.clear();
  };
  bool in_fence = false;
  std::string fence_marker;
  const auto lines = Lines(text);
  const auto trace = trace_filter->Classify(lines);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string trimmed = Trim(lines[i]);
    if (in_fence) {
      if (trimmed.rfind(fence_marker, 0) == 0) in_fence = false;
      continue;
    }
    if (IsFence(trimmed)) {
      flush();
      in_fence = true;
      fence_marker = trimmed.substr(0, 3);
      continue;
    }
    if (trimmed.empty()) {
      flush();
      continue;
    }
    if (trace[i] || trimmed[0] == '#' || trimmed[0] == '|') {
      flush();
      current = trimmed;
      flush();
      continue;
    }
    if (StartsBlock(trimmed)) flush();
    if (!current.empty()) current += ' ';
    current += trimmed;
  }
  flush();
  return blocks;
}

// Word ending at `end` (exclusive), lower-cased, without leading
// punctuation.
std::string WordBefore(const std::string &s, std::size_t end) {
  std::size_t start = end;
  while (start > 0 && !IsSpace(s[start - 1])) --start;
  std::string w = s.substr(start, end - start);
  std::size_t k = 0;
  while (k < w.size() && !std::isalnum(static_cast<unsigned char>(w[k]))) ++k;
  return ToLower(w.substr(k));
}

bool IsAbbreviation(const std::string &word) {
  if (word.size() == 1 && std::isalpha(static_cast<unsigned char>(word[0]))) return true;
  for (auto a : kAbbreviations) {
    if (word == a) return true;
  }
  // Dotted forms such as "u.s" or "e.g".
  return word.size() >= 3 && word.find('.') != std::string::npos &&
         word.find_first_not_of("abcdefghijklmnopqrstuvwxyz.") == std::string::npos &&
         word.find("..") == std::string::npos && word.size() <= 5;
}

void SplitBlock(const std::string &block, std::vector<std::string> &out) {
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < block.size()) {
    const char c = block[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < block.size() && (block[j] == '.' || block[j] == '!' || block[j] == '?')) ++j;
    while (j < block.size() && (block[j] == '"' || block[j] == '\'' || block[j] == ')' ||
                                block[j] == ']' || block[j] == '*' || block[j] == '_')) {
      ++j;
    }
    if (j < block.size() && !IsSpace(block[j])) {
      i = j;
      continue;
    }
    std::size_t k = j;
    while (k < block.size() && IsSpace(block[k])) ++k;
    bool boundary = true;
    if (k < block.size() && std::islower(static_cast<unsigned char>(block[k]))) boundary = false;
    if (boundary && c == '.' && j - i == 1 && IsAbbreviation(WordBefore(block, i))) boundary = false;
    if (boundary && c == '.' && j - i == 1) {
      const std::string so_far = Trim(std::string_view(block).substr(start, i - start));
      // Ordered-list marker such as "2." at the start of a sentence.
      if (!so_far.empty() && so_far.find_first_not_of("0123456789") == std::string::npos) boundary = false;
    }
    if (boundary) {
      const std::string s = Trim(std::string_view(block).substr(start, j - start));
      if (!s.empty()) out.push_back(s);
      start = k;
    }
    i = j;
  }
  const std::string tail = Trim(std::string_view(block).substr(std::min(start, block.size())));
  if (!tail.empty()) out.push_back(tail);
}

}  // namespace

std::vector<std::string> SplitSentenceTexts(std::string_view body) {
  std::vector<std::string> out;
  for (const auto &block : Blocks(body)) SplitBlock(block, out);
  return out;
}

std::size_t WordCount(std::string_view text) { return SplitWhitespace(text).size(); }

std::vector<Sentence> SplitSentences(const RawComment &comment) {
  std::vector<Sentence> out;
  std::size_t n = 0;
  for (auto &text : SplitSentenceTexts(comment.body)) {
    Sentence s;
    s.sentence_id = comment.comment_id + "-" + std::to_string(++n);
    s.source_comment = {comment.repo_slug, comment.comment_id};
    s.word_count = WordCount(text);
    s.preprocessed_text = PreprocessSeText(text);
    s.text = std::move(text);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sentence> FilterShort(const std::vector<Sentence> &sentences, std::size_t min_words) {
  if (min_words == 0) throw std::invalid_argument("filter_short: min_words must be at least 1");
  std::vector<Sentence> out;
  for (const auto &s : sentences) {
    if (s.word_count >= min_words) out.push_back(s);
  }
  return out;
}

std::vector<std::string> DefaultStackTracePatterns() {
  return {
      // Java / JVM frames and their continuation lines.
      R"(^\s*at\s+[\w$<>]+(\.[\w$<>]+)+\s*\(.*\)\s*$)",
      R"(^\s*\.\.\.\s*\d+\s+more\s*$)",
      R"(^\s*Caused by:\s+[\w$.]+(Exception|Error|Throwable)\b.*$)",
      R"(^\s*(Exception in thread "[^"]*"\s+)?([a-z][\w$]*\.)+[A-Z][\w$]*(Exception|Error)(:.*)?$)",
      // JavaScript frames.
      R"(^\s*at\s+(async\s+)?[\w$.<>\[\] ]*\(?[^\s()]+:\d+:\d+\)?\s*$)",
      // Python frames.
      R"(^\s*Traceback \(most recent call last\):\s*$)",
      R"(^\s*File "[^"]+", line \d+(, in .*)?$)",
      // Go and Rust panics.
      R"(^\s*goroutine \d+ \[.*\]:\s*$)",
      R"(^\s*\d+:\s+0x[0-9a-f]+ - .*$)",
  };
}

struct StackTraceFilter::Impl {
  std::vector<std::regex> patterns;
  std::regex traceback{R"(^\s*Traceback \(most recent call last\):\s*$)"};
  std::regex exception_line{R"(^[\w.]*(Error|Exception|Exit|Interrupt|Warning)\b.*$)"};
};

StackTraceFilter::StackTraceFilter(const PreprocessConfig &cfg)
    : python_blocks_(cfg.python_traceback_blocks) {
  auto impl = std::make_unique<Impl>();
  for (const auto &p : cfg.stack_trace_patterns) {
    try {
      impl->patterns.emplace_back(p, std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error &e) {
      throw std::invalid_argument("bad stack-trace pattern '" + p + "': " + e.what());
    }
  }
  impl_ = std::move(impl);
}

StackTraceFilter::~StackTraceFilter() = default;

bool StackTraceFilter::MatchesLine(std::string_view line) const {
  const std::string l(line);
  for (const auto &re : impl_->patterns) {
    if (std::regex_match(l, re)) return true;
  }
  return false;
}

std::vector<bool> StackTraceFilter::Classify(const std::vector<std::string> &lines) const {
  std::vector<bool> out(lines.size(), false);
  bool in_python = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string &line = lines[i];
    if (python_blocks_ && std::regex_match(line, impl_->traceback)) {
      in_python = true;
      out[i] = true;
      continue;
    }
    if (in_python) {
      const bool indented = !line.empty() && (line[0] == ' ' || line[0] == '\t');
      if (indented) {
        out[i] = true;
        continue;
      }
      in_python = false;
      if (std::regex_match(line, impl_->exception_line)) {
        out[i] = true;
        continue;
      }
    }
    out[i] = MatchesLine(line);
  }
  return out;
}

namespace {

const std::regex &MarkdownLink() {
  static const std::regex *re = new std::regex(R"(\[([^\]]*)\]\([^)\s]*\))");
  return *re;
}

const std::regex &UrlOrMention() {
  static const std::regex *re =
      new std::regex(R"((https?://|www\.)[^\s<>()\[\]]+|(^|[^\w@.])@[A-Za-z0-9](?:[A-Za-z0-9-]*[A-Za-z0-9])?(\[bot\])?)",
                     std::regex::icase);
  return *re;
}

bool HasAlnum(std::string_view s) {
  for (unsigned char c : s) {
    if (std::isalnum(c) || c >= 0x80) return true;
  }
  return false;
}

}  // namespace

std::string PreprocessSeText(std::string_view text, const StackTraceFilter &filter) {
  const auto lines = Lines(text);
  const auto trace = filter.Classify(lines);
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trace[i]) continue;
    const std::string line = std::regex_replace(lines[i], MarkdownLink(), "$1");
    for (const auto &token : SplitWhitespace(line)) {
      std::string cleaned;
      std::regex_replace(std::back_inserter(cleaned), token.begin(), token.end(), UrlOrMention(), "$2");
      if (cleaned != token && !HasAlnum(cleaned)) continue;
      if (cleaned.empty()) continue;
      if (!out.empty()) out += ' ';
      out += cleaned;
    }
  }
  return out;
}

std::string PreprocessSeText(std::string_view text) {
  static const StackTraceFilter *filter = new StackTraceFilter();
  return PreprocessSeText(text, *filter);
}

}  // namespace ingest
}  // namespace figlang
