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

#include <algorithm>
#include <filesystem>
#include <set>

#include "doctest.h"
#include "figlang/ingest/detect.h"
#include "figlang/ingest/github.h"
#include "figlang/ingest/text.h"
#include "figlang/ingest/types.h"
#include "figlang/util/random.h"
#include "json.hpp"

namespace figlang::ingest {
namespace {

const std::filesystem::path kFixtures = std::filesystem::path(FIGLANG_TEST_DIR) / "fixtures";

DateRange Autumn2022() { return {ParseUtc("2022-09-01"), ParseUtc("2023-01-01")}; }

GitHubConfig TestConfig() {
  GitHubConfig cfg;
  cfg.api_base = "https://api.github.test";
  cfg.token = "test-token";
  return cfg;
}

const std::string kPage1 =
    "/repos/octo/demo/issues/comments?sort=created&direction=asc&since=2022-09-01T00%3A00%3A00Z"
    "&per_page=100&page=1";

Sentence MakeSentence(const std::string &id, const std::string &text) {
  return {id, {"octo/demo", "c"}, text, WordCount(text), PreprocessSeText(text)};
}

TEST_CASE("fetch: zero limit returns nothing without a request") {
  FixtureTransport transport;
  GitHubClient client(transport, TestConfig());
  const auto r = client.FetchComments("r/r", Autumn2022(), CommentKind::kIssue, 0);
  CHECK(r.comments.empty());
  CHECK(transport.requests().empty());
}

TEST_CASE("fetch: recorded fixture replays to exactly its three comments") {
  FixtureTransport transport(kFixtures / "github");
  GitHubClient client(transport, TestConfig());
  const auto r = client.FetchComments("octo/demo", Autumn2022(), CommentKind::kIssue, 5000);
  REQUIRE(r.comments.size() == 3);
  CHECK_FALSE(r.partial);
  CHECK(r.comments[0].comment_id == "1001");
  CHECK(r.comments[0].author == "alice");
  CHECK(r.comments[1].body == "Agreed, the flaky test is a ticking time bomb.");
  CHECK(r.comments[2].author == "ghost");
  CHECK(FormatUtc(r.comments[2].created_at) == "2022-09-04T08:15:00Z");
  for (const auto &c : r.comments) {
    CHECK(c.repo_slug == "octo/demo");
    CHECK(c.kind == CommentKind::kIssue);
  }
  CHECK(transport.requests() == std::vector<std::string>{"GET " + kPage1});
}

nlohmann::json Comment(int id, bool pr, const std::string &created) {
  return {{"id", id},
          {"html_url", std::string("https://github.com/octo/demo/") + (pr ? "pull/3" : "issues/3") +
                           "#issuecomment-" + std::to_string(id)},
          {"user", {{"login", "u" + std::to_string(id)}}},
          {"created_at", created},
          {"body", "comment " + std::to_string(id)}};
}

std::string PageTarget(int page, int per_page) {
  return "/repos/octo/demo/issues/comments?sort=created&direction=asc&since=2022-09-01T00%3A00%3A00Z"
         "&per_page=" + std::to_string(per_page) + "&page=" + std::to_string(page);
}

TEST_CASE("fetch: pagination, kind filter, window and limit") {
  FixtureTransport transport;
  nlohmann::json p1 = {Comment(1, false, "2022-08-31T23:59:59Z"), Comment(2, true, "2022-09-01T00:00:00Z"),
                       Comment(3, false, "2022-09-10T00:00:00Z")};
  nlohmann::json p2 = {Comment(4, true, "2022-10-01T00:00:00Z"), Comment(5, true, "2022-12-31T23:59:59Z"),
                       Comment(6, true, "2023-01-01T00:00:00Z")};
  transport.Add({"GET", PageTarget(1, 3), 200, {{"link", "<x?page=2>; rel=\"next\""}}, p1.dump()});
  transport.Add({"GET", PageTarget(2, 3), 200, {{"link", "<x?page=3>; rel=\"next\""}}, p2.dump()});
  auto cfg = TestConfig();
  cfg.per_page = 3;
  GitHubClient client(transport, cfg);
  const auto prs = client.FetchComments("octo/demo", Autumn2022(), CommentKind::kPullRequest, 100);
  std::vector<std::string> ids;
  for (const auto &c : prs.comments) ids.push_back(c.comment_id);
  CHECK(ids == std::vector<std::string>{"2", "4", "5"});
  CHECK(prs.pages == 2);
  for (const auto &c : prs.comments) CHECK(Autumn2022().Contains(c.created_at));

  const auto limited = client.FetchComments("octo/demo", Autumn2022(), CommentKind::kPullRequest, 2);
  CHECK(limited.comments.size() == 2);
  const auto issues = client.FetchComments("octo/demo", Autumn2022(), CommentKind::kIssue, 100);
  REQUIRE(issues.comments.size() == 1);
  CHECK(issues.comments[0].comment_id == "3");
}

TEST_CASE("fetch: rate limit backs off, then returns partial results") {
  FixtureTransport transport;
  nlohmann::json p1 = {Comment(1, false, "2022-09-02T00:00:00Z")};
  transport.Add({"GET", PageTarget(1, 1), 200, {{"link", "<x>; rel=\"next\""}}, p1.dump()});
  transport.Add({"GET", PageTarget(2, 1), 403, {{"x-ratelimit-remaining", "0"}}, "{}"});
  auto cfg = TestConfig();
  cfg.per_page = 1;
  cfg.max_retries = 3;
  cfg.initial_backoff = std::chrono::milliseconds(100);
  std::vector<std::chrono::milliseconds> slept;
  GitHubClient client(transport, cfg, [&](auto d) { slept.push_back(d); });
  const auto r = client.FetchComments("octo/demo", Autumn2022(), CommentKind::kIssue, 10);
  CHECK(r.partial);
  CHECK(r.comments.size() == 1);
  CHECK(r.message.find("rate limit") != std::string::npos);
  CHECK(slept == std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(100),
                                                        std::chrono::milliseconds(200),
                                                        std::chrono::milliseconds(400)});
}

TEST_CASE("fetch: transient failure recovers after a retry") {
  FixtureTransport transport;
  nlohmann::json p1 = {Comment(1, false, "2022-09-02T00:00:00Z")};
  transport.Add({"GET", PageTarget(1, 100), 429, {{"retry-after", "2"}}, ""});
  transport.Add({"GET", PageTarget(1, 100), 200, {}, p1.dump()});
  GitHubClient client(transport, TestConfig(), [](auto) {});
  const auto r = client.FetchComments("octo/demo", Autumn2022(), CommentKind::kIssue, 10);
  CHECK_FALSE(r.partial);
  CHECK(r.comments.size() == 1);
  CHECK(client.sleeps() == std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(2000)});
}

TEST_CASE("fetch: auth failure, unknown repo and bad slug") {
  FixtureTransport transport;
  transport.Add({"GET", PageTarget(1, 100), 401, {}, R"({"message":"Bad credentials"})"});
  GitHubClient client(transport, TestConfig());
  CHECK_THROWS_AS(client.FetchComments("octo/demo", Autumn2022(), CommentKind::kIssue, 5), GitHubAuthError);
  CHECK_THROWS_AS(client.FetchComments("octo/missing", Autumn2022(), CommentKind::kIssue, 5),
                  UnknownRepoError);
  CHECK_THROWS_AS(client.FetchComments("not a slug", Autumn2022(), CommentKind::kIssue, 5),
                  std::invalid_argument);
  auto cfg = TestConfig();
  cfg.token.clear();
  if (!std::getenv("GH_TOKEN")) {
    GitHubClient anonymous(transport, cfg);
    CHECK_THROWS_AS(anonymous.FetchComments("octo/demo", Autumn2022(), CommentKind::kIssue, 5),
                    GitHubAuthError);
  }
}

TEST_CASE("raw comment store merges without duplicates") {
  const auto dir = std::filesystem::temp_directory_path() / "figlang_ingest_store";
  std::filesystem::remove_all(dir);
  RawCommentStore store(dir / "raw.jsonl");
  FixtureTransport transport(kFixtures / "github");
  GitHubClient client(transport, TestConfig());
  const auto r = client.FetchComments("octo/demo", Autumn2022(), CommentKind::kIssue, 10);
  CHECK(store.Merge(r.comments) == 3);
  CHECK(store.Merge(r.comments) == 0);
  CHECK(store.Load() == r.comments);
  std::filesystem::remove_all(dir);
}

TEST_CASE("split: reference examples") {
  CHECK(SplitSentenceTexts("Fix merged. Thanks a lot everyone!") ==
        std::vector<std::string>{"Fix merged.", "Thanks a lot everyone!"});
  CHECK(SplitSentenceTexts("").empty());
  CHECK(SplitSentenceTexts("   \n\n ").empty());
}

TEST_CASE("split: 20-comment fixture matches the hand segmentation") {
  const auto comments = RawCommentsFromJsonl(ReadFile(kFixtures / "segmentation" / "comments.jsonl"));
  const auto reference = nlohmann::json::parse(ReadFile(kFixtures / "segmentation" / "reference.json"));
  REQUIRE(comments.size() == 20);
  for (const auto &c : comments) {
    CAPTURE(c.comment_id);
    const auto expected = reference.at(c.comment_id).get<std::vector<std::string>>();
    const auto sentences = SplitSentences(c);
    CHECK(SplitSentenceTexts(c.body) == expected);
    REQUIRE(sentences.size() == expected.size());
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      CHECK(sentences[i].sentence_id == c.comment_id + "-" + std::to_string(i + 1));
      CHECK(sentences[i].word_count == SplitWhitespace(sentences[i].text).size());
      CHECK(sentences[i].source_comment == CommentRef{c.repo_slug, c.comment_id});
    }
    CHECK(SplitSentences(c) == sentences);
  }
}

TEST_CASE("filter_short: threshold examples") {
  const auto kept = FilterShort({MakeSentence("a", "I see your point"),
                                 MakeSentence("b", "this could give us a nasty bug")});
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].sentence_id == "b");
  CHECK_THROWS_AS(FilterShort({}, 0), std::invalid_argument);
}

TEST_CASE("filter_short: mixed fixture equals a recount, and is idempotent") {
  const std::vector<std::string> texts = {
      "one", "two words", "a b c d", "exactly five words right here", "  padded   with   spaces  here ok ",
      "tabs\tcount\tas\twhitespace\ttoo", "this is a somewhat longer sentence indeed", "four words only here",
      "five\nwords across two lines", "x y z w v u"};
  std::vector<Sentence> sentences;
  for (std::size_t i = 0; i < texts.size(); ++i) sentences.push_back(MakeSentence(std::to_string(i), texts[i]));
  for (std::size_t min_words : {1, 3, 5, 7}) {
    std::vector<std::string> expected;
    for (std::size_t i = 0; i < texts.size(); ++i) {
      std::size_t words = 0;
      bool in_word = false;
      for (char ch : texts[i]) {
        const bool space = ch == ' ' || ch == '\t' || ch == '\n';
        if (!space && !in_word) ++words;
        in_word = !space;
      }
      if (words >= min_words) expected.push_back(std::to_string(i));
    }
    const auto once = FilterShort(sentences, min_words);
    std::vector<std::string> got;
    for (const auto &s : once) got.push_back(s.sentence_id);
    CHECK(got == expected);
    CHECK(FilterShort(once, min_words) == once);
  }
}

TEST_CASE("preprocess: URLs and mentions are removed") {
  CHECK(PreprocessSeText("see https://x.example @bob thanks") == "see thanks");
  CHECK(PreprocessSeText("no noise here") == "no noise here");
  CHECK(PreprocessSeText("cc @octo-bot[bot], mail me at dev@example.com") == "cc mail me at dev@example.com");
  CHECK(PreprocessSeText("read [the docs](https://docs.example/x) (www.example.org) first") ==
        "read the docs first");
  CHECK(PreprocessSeText("") == "");
}

// Lines are tagged "P|" for prose and "T|" for trace.
void CheckTraceFixture(const std::string &name) {
  CAPTURE(name);
  std::vector<std::string> lines;
  std::vector<bool> is_trace;
  for (const auto &line : ReadLines(kFixtures / "stacktrace" / name)) {
    REQUIRE(line.size() >= 2);
    is_trace.push_back(line[0] == 'T');
    lines.push_back(line.substr(2));
  }
  StackTraceFilter filter;
  CHECK(filter.Classify(lines) == is_trace);

  std::string joined, expected_source;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    joined += lines[i] + "\n";
    if (!is_trace[i]) expected_source += lines[i] + "\n";
  }
  const std::string out = PreprocessSeText(joined);
  CHECK(out == PreprocessSeText(expected_source));
  CHECK(out.find(".java:") == std::string::npos);
  CHECK(out.find("Traceback") == std::string::npos);
  CHECK(out.find("http") == std::string::npos);
}

TEST_CASE("preprocess: stack traces are dropped, prose kept") {
  CheckTraceFixture("java_trace.txt");
  CheckTraceFixture("python_trace.txt");
  CheckTraceFixture("js_trace.txt");
  CHECK(PreprocessSeText("It looks like the pool is a ticking time bomb at shutdown.\n") ==
        "It looks like the pool is a ticking time bomb at shutdown.");
}

TEST_CASE("preprocess: custom stack-trace patterns") {
  PreprocessConfig cfg;
  cfg.stack_trace_patterns = {R"(^\s*#\d+ .*$)"};
  cfg.python_traceback_blocks = false;
  StackTraceFilter filter(cfg);
  CHECK(PreprocessSeText("crash:\n#0 0x1 in main\n#1 0x2 in start\nsad", filter) == "crash: sad");
  cfg.stack_trace_patterns = {"("};
  CHECK_THROWS_AS(StackTraceFilter{cfg}, std::invalid_argument);
}

TEST_CASE("screen: stub detectors flagging nothing give nothing") {
  NullDetector none;
  AcceptAllDetector affect("affective");
  const auto r = ScreenCandidates({MakeSentence("a", "this could give us a nasty bug")}, none, none, affect);
  CHECK(r.candidates.empty());
  CHECK(r.unscreened.empty());
  CHECK(r.without_candidates == 1);
}

TEST_CASE("screen: a single flagged affective sentence") {
  const auto s = MakeSentence("a", "this could give us a nasty bug");
  LexiconDetector metaphor({"nasty bug"});
  NullDetector none;
  AcceptAllDetector affect("affective");
  const auto r = ScreenCandidates({s, MakeSentence("b", "plain words in a row")}, metaphor, none, affect);
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].sentence == s);
  CHECK(r.candidates[0].affect_screen == AffectScreen::kAffective);
  REQUIRE(r.candidates[0].metaphor_candidates.size() == 1);
  CHECK(r.candidates[0].metaphor_candidates[0] == CandidateSpan{21, 30, "nasty bug"});
}

TEST_CASE("screen: 50 scripted sentences give the intersection of verdicts") {
  Rng rng(77);
  std::vector<Sentence> sentences;
  TranscriptDetector metaphor("met"), idiom("idi"), sentiment("sent");
  std::set<std::string> flagged, affective, failing;
  for (int i = 0; i < 50; ++i) {
    const auto s = MakeSentence("s" + std::to_string(i), "sentence number " + std::to_string(i) + " is here");
    sentences.push_back(s);
    const bool has_met = rng.Below(3) == 0;
    const bool has_idi = rng.Below(4) == 0;
    const bool is_affective = rng.Below(2) == 0;
    const bool fails = rng.Below(10) == 0;
    metaphor.Add(s.text, {has_met ? std::vector<DetectedSpan>{{0, 8}} : std::vector<DetectedSpan>{}, "", ""});
    idiom.Add(s.text, {has_idi ? std::vector<DetectedSpan>{{9, 15}} : std::vector<DetectedSpan>{}, "",
                       fails ? "model crashed" : ""});
    sentiment.Add(s.preprocessed_text, {{}, is_affective ? "negative" : "neutral", ""});
    if (has_met || has_idi) flagged.insert(s.sentence_id);
    if (is_affective) affective.insert(s.sentence_id);
    if (fails) failing.insert(s.sentence_id);
  }
  const auto r = ScreenCandidates(sentences, metaphor, idiom, sentiment, 16);
  std::set<std::string> expected;
  std::set_intersection(flagged.begin(), flagged.end(), affective.begin(), affective.end(),
                        std::inserter(expected, expected.end()));
  for (const auto &id : failing) expected.erase(id);
  std::set<std::string> got, got_failed;
  for (const auto &c : r.candidates) {
    got.insert(c.sentence.sentence_id);
    CHECK(c.metaphor_candidates.size() + c.idiom_candidates.size() > 0);
  }
  for (const auto &c : r.unscreened) {
    got_failed.insert(c.sentence.sentence_id);
    CHECK(c.affect_screen == AffectScreen::kUnscreened);
    CHECK(c.error.find("model crashed") != std::string::npos);
  }
  CHECK(got == expected);
  CHECK(got_failed == failing);
  CHECK(r.candidates.size() + r.unscreened.size() + r.neutral + r.without_candidates == 50);
}

TEST_CASE("screen: out-of-range spans mark the item unscreened") {
  const auto s = MakeSentence("a", "short text here ok fine");
  TranscriptDetector bad("bad");
  bad.Add(s.text, {{{0, 999}}, "", ""});
  NullDetector none;
  AcceptAllDetector affect;
  const auto r = ScreenCandidates({s}, bad, none, affect);
  CHECK(r.unscreened.size() == 1);
}

TEST_CASE("pipeline shrinks monotonically and serializes deterministically") {
  FixtureTransport transport(kFixtures / "github");
  GitHubClient client(transport, TestConfig());
  const auto comments = client.FetchComments("octo/demo", Autumn2022(), CommentKind::kIssue, 10).comments;
  std::vector<Sentence> sentences;
  for (const auto &c : comments) {
    const auto split = SplitSentences(c);
    sentences.insert(sentences.end(), split.begin(), split.end());
  }
  const auto kept = FilterShort(sentences);
  LexiconDetector metaphor({"nasty bug", "ticking time bomb"}), idiom({"keep an eye"});
  AcceptAllDetector affect;
  const auto screened = ScreenCandidates(kept, metaphor, idiom, affect);
  CHECK(comments.size() >= 1);
  CHECK(sentences.size() >= kept.size());
  CHECK(kept.size() >= screened.candidates.size());
  CHECK(screened.candidates.size() == 3);
  const auto text = ToJsonl(screened.candidates);
  CHECK(CandidatesFromJsonl(text) == screened.candidates);
  CHECK(ToJsonl(ScreenCandidates(kept, metaphor, idiom, affect).candidates) == text);
  CHECK(SentencesFromJsonl(ToJsonl(sentences)) == sentences);
}

}  // namespace
}  // namespace figlang::ingest
