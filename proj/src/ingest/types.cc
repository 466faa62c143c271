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

#include "figlang/ingest/types.h"

#include <map>
#include <stdexcept>

#include "json.hpp"

namespace figlang {
namespace ingest {

namespace {

using nlohmann::json;

template <typename T, typename Fn>
std::vector<T> FromJsonl(std::string_view text, const char *what, Fn &&parse) {
  std::vector<T> out;
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
      out.push_back(parse(json::parse(line)));
    } catch (const std::exception &e) {
      throw IoError(std::string(what) + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

template <typename T, typename Fn>
std::string ToJsonlWith(const std::vector<T> &items, Fn &&to_json) {
  std::string out;
  for (const auto &item : items) {
    out += to_json(item).dump();
    out += '\n';
  }
  return out;
}

json SentenceJson(const Sentence &s) {
  return {{"sentence_id", s.sentence_id},
          {"source_comment", {{"repo_slug", s.source_comment.repo_slug},
                              {"comment_id", s.source_comment.comment_id}}},
          {"text", s.text},
          {"word_count", s.word_count},
          {"preprocessed_text", s.preprocessed_text}};
}

Sentence SentenceFromJson(const json &j) {
  Sentence s;
  s.sentence_id = j.at("sentence_id").get<std::string>();
  s.source_comment.repo_slug = j.at("source_comment").at("repo_slug").get<std::string>();
  s.source_comment.comment_id = j.at("source_comment").at("comment_id").get<std::string>();
  s.text = j.at("text").get<std::string>();
  s.word_count = j.at("word_count").get<std::size_t>();
  s.preprocessed_text = j.at("preprocessed_text").get<std::string>();
  return s;
}

json SpansJson(const std::vector<CandidateSpan> &spans) {
  json out = json::array();
  for (const auto &s : spans) out.push_back({{"start", s.start}, {"end", s.end}, {"surface", s.surface}});
  return out;
}

std::vector<CandidateSpan> SpansFromJson(const json &j) {
  std::vector<CandidateSpan> out;
  for (const auto &s : j) {
    out.push_back({s.at("start").get<std::size_t>(), s.at("end").get<std::size_t>(),
                   s.at("surface").get<std::string>()});
  }
  return out;
}

}  // namespace

std::string_view ToString(CommentKind k) {
  return k == CommentKind::kIssue ? "issue" : "pull_request";
}

CommentKind ParseCommentKind(std::string_view s) {
  if (s == "issue") return CommentKind::kIssue;
  if (s == "pull_request") return CommentKind::kPullRequest;
  throw std::invalid_argument("unknown comment kind '" + std::string(s) + "'");
}

std::string_view ToString(AffectScreen a) {
  switch (a) {
    case AffectScreen::kAffective: return "affective";
    case AffectScreen::kNeutral: return "neutral";
    case AffectScreen::kUnscreened: break;
  }
  return "unscreened";
}

AffectScreen ParseAffectScreen(std::string_view s) {
  if (s == "affective") return AffectScreen::kAffective;
  if (s == "neutral") return AffectScreen::kNeutral;
  if (s == "unscreened") return AffectScreen::kUnscreened;
  throw std::invalid_argument("unknown affect screen '" + std::string(s) + "'");
}

std::string ToJsonl(const std::vector<RawComment> &comments) {
  return ToJsonlWith(comments, [](const RawComment &c) {
    return json{{"repo_slug", c.repo_slug},
                {"kind", std::string(ToString(c.kind))},
                {"comment_id", c.comment_id},
                {"author", c.author},
                {"created_at", FormatUtc(c.created_at)},
                {"body", c.body}};
  });
}

std::string ToJsonl(const std::vector<Sentence> &sentences) {
  return ToJsonlWith(sentences, SentenceJson);
}

std::string ToJsonl(const std::vector<CandidateSentence> &candidates) {
  return ToJsonlWith(candidates, [](const CandidateSentence &c) {
    json j = {{"sentence", SentenceJson(c.sentence)},
              {"metaphor_candidates", SpansJson(c.metaphor_candidates)},
              {"idiom_candidates", SpansJson(c.idiom_candidates)},
              {"affect_screen", std::string(ToString(c.affect_screen))}};
    if (!c.error.empty()) j["error"] = c.error;
    return j;
  });
}

std::vector<RawComment> RawCommentsFromJsonl(std::string_view text) {
  return FromJsonl<RawComment>(text, "raw comment", [](const json &j) {
    RawComment c;
    c.repo_slug = j.at("repo_slug").get<std::string>();
    c.kind = ParseCommentKind(j.at("kind").get<std::string>());
    c.comment_id = j.at("comment_id").get<std::string>();
    c.author = j.at("author").get<std::string>();
    c.created_at = ParseUtc(j.at("created_at").get<std::string>());
    c.body = j.at("body").get<std::string>();
    return c;
  });
}

std::vector<Sentence> SentencesFromJsonl(std::string_view text) {
  return FromJsonl<Sentence>(text, "sentence", SentenceFromJson);
}

std::vector<CandidateSentence> CandidatesFromJsonl(std::string_view text) {
  return FromJsonl<CandidateSentence>(text, "candidate", [](const json &j) {
    CandidateSentence c;
    c.sentence = SentenceFromJson(j.at("sentence"));
    c.metaphor_candidates = SpansFromJson(j.at("metaphor_candidates"));
    c.idiom_candidates = SpansFromJson(j.at("idiom_candidates"));
    c.affect_screen = ParseAffectScreen(j.at("affect_screen").get<std::string>());
    c.error = j.value("error", std::string());
    return c;
  });
}

std::vector<RawComment> RawCommentStore::Load() const {
  if (!std::filesystem::exists(path_)) return {};
  return RawCommentsFromJsonl(ReadFile(path_));
}

std::size_t RawCommentStore::Merge(const std::vector<RawComment> &comments) const {
  std::map<std::pair<std::string, std::string>, RawComment> merged;
  for (auto &c : Load()) merged.emplace(std::pair{c.repo_slug, c.comment_id}, std::move(c));
  std::size_t added = 0;
  for (const auto &c : comments) added += merged.emplace(std::pair{c.repo_slug, c.comment_id}, c).second;
  std::vector<RawComment> all;
  all.reserve(merged.size());
  for (auto &[key, c] : merged) all.push_back(std::move(c));
  WriteFileAtomic(path_, ToJsonl(all));
  return added;
}

}  // namespace ingest
}  // namespace figlang
