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

#include <filesystem>
#include <set>

#include "doctest.h"
#include "figlang/figdata/dataset.h"
#include "figlang/figdata/llm.h"
#include "figlang/figdata/triplets.h"
#include "figlang/util/io.h"

namespace figlang::figdata {
namespace {

FigurativeExpression Expr(const std::string &sentence, const std::string &surface, Category c,
                          Scope s) {
  const auto pos = sentence.find(surface);
  REQUIRE(pos != std::string::npos);
  return {surface, {pos, pos + surface.size()}, c, s, true};
}

AnnotatedSentence Adjudicated(const std::string &id, const std::string &original,
                              const std::string &surface, Category c = Category::kMetaphor,
                              Scope s = Scope::kSeSpecific) {
  AnnotatedSentence item;
  item.id = id;
  item.original = original;
  item.expressions = {Expr(original, surface, c, s)};
  item.ems = "ems of " + id;
  item.dms_candidates = {"d1 " + id, "d2 " + id, "d3 " + id, "d4 " + id};
  item.dms_choice = DmsChoice::kC2;
  item.dms = item.dms_candidates[1];
  item.status = Status::kAdjudicated;
  return item;
}

std::vector<AnnotatedSentence> TenItems() {
  std::vector<AnnotatedSentence> items;
  for (int i = 0; i < 10; ++i) {
    items.push_back(Adjudicated("s" + std::to_string(i), "this could give us a nasty bug " +
                                                             std::to_string(i), "nasty bug"));
  }
  items[3].provenance = {"octo/repo", "c17", "c17-2"};
  items[4].note = "re-checked";
  items[5].dms_choice = DmsChoice::kNoneCustom;
  items[5].dms = "a handwritten alternative";
  return items;
}

TEST_CASE("enum names round trip") {
  for (auto s : {Status::kScreened, Status::kVerified, Status::kEmsDone, Status::kDmsCandidatesReady,
                 Status::kDmsSelected, Status::kAdjudicated, Status::kRejected}) {
    CHECK(ParseStatus(ToString(s)) == s);
  }
  CHECK(ToString(Status::kDmsCandidatesReady) == "dms_candidates_ready");
  CHECK(ParseDmsChoice("none_custom") == DmsChoice::kNoneCustom);
  CHECK(ParseScope("se_specific") == Scope::kSeSpecific);
  CHECK_THROWS(ParseCategory("simile"));
}

TEST_CASE("status order") {
  CHECK(AtLeast(Status::kAdjudicated, Status::kDmsSelected));
  CHECK(AtLeast(Status::kVerified, Status::kVerified));
  CHECK_FALSE(AtLeast(Status::kEmsDone, Status::kDmsSelected));
  CHECK_FALSE(AtLeast(Status::kRejected, Status::kVerified));
  CHECK(AtLeast(Status::kRejected, Status::kRejected));
}

TEST_CASE("save then load gives equal records and identical bytes") {
  const auto items = TenItems();
  const auto dir = std::filesystem::temp_directory_path() / "figlang_figdata_test";
  SaveDataset(items, dir / "a.jsonl");
  const auto loaded = LoadDataset(dir / "a.jsonl");
  CHECK(loaded == items);
  SaveDataset(loaded, dir / "b.jsonl");
  CHECK(ReadFile(dir / "a.jsonl") == ReadFile(dir / "b.jsonl"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("canonical lines have sorted keys and omit absent optionals") {
  AnnotatedSentence item;
  item.id = "x";
  item.original = "keep an eye on it";
  item.expressions = {{"keep an eye", {0, 11}, Category::kIdiom, Scope::kGeneral, false}};
  const auto line = ToCanonicalJsonl({item});
  CHECK(line ==
        "{\"expressions\":[{\"category\":\"idiom\",\"scope\":\"general\",\"span\":[0,11],"
        "\"surface\":\"keep an eye\",\"verified\":false}],\"id\":\"x\",\"original\":\"keep an eye on "
        "it\",\"status\":\"screened\"}\n");
}

TEST_CASE("non-ASCII text survives the round trip byte for byte") {
  auto item = Adjudicated("u1", "\xe8\xbf\x99\xe6\x98\xaf a \xe2\x80\x9cnasty bug\xe2\x80\x9d \xf0\x9f\x90\x9b",
                          "nasty bug");
  item.ems = "un probl\xc3\xa8me s\xc3\xa9rieux";
  const auto text = ToCanonicalJsonl({item});
  const auto back = ParseJsonl(text);
  REQUIRE(back.size() == 1);
  CHECK(back[0] == item);
  CHECK(ToCanonicalJsonl(back) == text);
  const auto &e = back[0].expressions[0];
  CHECK(back[0].original.substr(e.span.start, e.span.end - e.span.start) == "nasty bug");
}

TEST_CASE("missing field is reported with line and name") {
  const std::string good = ToCanonicalJsonl(TenItems()).substr(0, ToCanonicalJsonl(TenItems()).find('\n') + 1);
  std::string bad = "{\"expressions\":[],\"id\":\"q\",\"status\":\"screened\"}\n";
  try {
    ParseJsonl(good + bad);
    FAIL("expected a schema error");
  } catch (const SchemaError &e) {
    CHECK(e.line() == 2);
    CHECK(e.field() == "original");
    CHECK(std::string(e.what()).find("'original'") != std::string::npos);
  }
}

TEST_CASE("schema violations") {
  auto expect_field = [](const std::string &line, const std::string &field) {
    try {
      ParseJsonl(line);
      FAIL("expected a schema error for ", field);
    } catch (const SchemaError &e) {
      CHECK(e.field() == field);
    }
  };
  expect_field("{\"expressions\":[],\"id\":\"q\",\"original\":\"x\",\"status\":\"done\"}", "status");
  expect_field("{\"expressions\":[],\"id\":\"q\",\"original\":\"x\",\"status\":\"screened\",\"extra\":1}",
               "extra");
  expect_field("not json", "<record>");
  expect_field(
      "{\"expressions\":[{\"category\":\"idiom\",\"scope\":\"general\",\"span\":[0,3],\"surface\":\"abc\","
      "\"verified\":false}],\"id\":\"q\",\"original\":\"xyz\",\"status\":\"screened\"}",
      "expressions");
}

TEST_CASE("invariants between status and content") {
  auto item = Adjudicated("a", "a nasty bug here", "nasty bug");
  CHECK_NOTHROW(ValidateItem(item));

  auto no_ems = item;
  no_ems.ems.reset();
  CHECK_THROWS_AS(ValidateItem(no_ems), SchemaError);

  auto early_dms = item;
  early_dms.status = Status::kEmsDone;
  early_dms.dms_candidates.clear();
  CHECK_THROWS_AS(ValidateItem(early_dms), SchemaError);

  auto rejected = item;
  rejected.status = Status::kRejected;
  CHECK_THROWS_AS(ValidateItem(rejected), SchemaError);

  auto wrong_choice = item;
  wrong_choice.dms = "something else";
  CHECK_THROWS_AS(ValidateItem(wrong_choice), SchemaError);

  auto three = item;
  three.dms_candidates.pop_back();
  CHECK_THROWS_AS(ValidateItem(three), SchemaError);

  auto dup = TenItems();
  dup[1].id = dup[0].id;
  CHECK_THROWS_AS(ParseJsonl(ToCanonicalJsonl(dup)), SchemaError);
}

TEST_CASE("triplets: two per eligible item in id order") {
  CHECK(BuildTriplets({}).triplets.empty());
  const auto one = BuildTriplets({Adjudicated("a", "a nasty bug here", "nasty bug")});
  REQUIRE(one.triplets.size() == 2);
  const auto &t0 = one.triplets[0];
  const auto &t1 = one.triplets[1];
  CHECK(t0.orientation == Orientation::kOrigAnchor);
  CHECK(t0.anchor == "a nasty bug here");
  CHECK(t0.positive == "ems of a");
  CHECK(t1.orientation == Orientation::kEmsAnchor);
  CHECK(t1.anchor == "ems of a");
  CHECK(t1.positive == "a nasty bug here");
  CHECK(t0.negative == "d2 a");
  CHECK(t1.negative == "d2 a");

  auto items = TenItems();
  std::reverse(items.begin(), items.end());
  AnnotatedSentence screened;
  screened.id = "zz";
  screened.original = "plain";
  items.push_back(screened);
  const auto built = BuildTriplets(items);
  CHECK(built.triplets.size() == 20);
  CHECK(built.skipped == std::vector<std::string>{"zz"});
  for (std::size_t i = 1; i < built.triplets.size(); ++i) {
    CHECK(built.triplets[i - 1].source_id <= built.triplets[i].source_id);
  }
  for (const auto &t : built.triplets) {
    CHECK(t.anchor != t.negative);
    CHECK(t.positive != t.negative);
  }
  CHECK(BuildTriplets(items).triplets == built.triplets);
}

TEST_CASE("triplets: JSONL round trip") {
  const auto built = BuildTriplets(TenItems());
  CHECK(TripletsFromJsonl(TripletsToJsonl(built.triplets)) == built.triplets);
}

TEST_CASE("dataset stats: empty dataset is all zeros") {
  CHECK(ComputeDatasetStats({}) == DatasetStats{});
}

TEST_CASE("dataset stats: shared expression is counted once") {
  std::vector<AnnotatedSentence> items = {
      Adjudicated("1", "the root cause was a race", "root cause"),
      Adjudicated("2", "several root causes here", "root causes"),
      Adjudicated("3", "keep an eye on the flaky test", "keep an eye", Category::kIdiom, Scope::kGeneral),
  };
  items[2].expressions.push_back(Expr(items[2].original, "flaky test", Category::kMetaphor, Scope::kSeSpecific));
  const auto stats = ComputeDatasetStats(items);
  const std::size_t naive = 4;
  CHECK(stats.n_unique_expressions == naive - 1);
  CHECK(stats.n_se_specific == 2);
  CHECK(stats.n_general == 1);
  CHECK(stats.n_sentences == 3);
  CHECK(stats.n_metaphor_sentences == 3);
  CHECK(stats.n_idiom_sentences == 1);
  CHECK(stats.n_both_scope_sentences == 1);
  CHECK(stats.n_se_only_sentences == 2);
}

TEST_CASE("prompts render the two templates") {
  const auto literal = RenderDmsPrompt(DmsStrategy::kLiteralUse, "This is a nasty bug", {"nasty bug"});
  CHECK(literal.rfind("You are reading GitHub comments with figurative expressions.", 0) == 0);
  CHECK(literal.find("generate 2 examples by using the given figurative expressions in a literal manner") !=
        std::string::npos);
  CHECK(literal.find("Original Sentence:This is a nasty bug.") != std::string::npos);
  CHECK(literal.substr(literal.size() - 33) == "Figurative expressions: nasty bug");
  const auto replace =
      RenderDmsPrompt(DmsStrategy::kReplacement, "u", {"keep an eye", "nasty bug"});
  CHECK(replace.find("by replacing given figurative expressions") != std::string::npos);
  CHECK(replace.find("Figurative expressions: keep an eye, nasty bug") != std::string::npos);
  CHECK(replace.find('<') == std::string::npos);
}

TEST_CASE("completion parsing strips list markers") {
  CHECK(ParseCompletion("1. First one.\n2) \"Second one.\"\n\n") ==
        std::vector<std::string>{"First one.", "Second one."});
  CHECK(ParseCompletion("- a\n* b\nc").size() == 3);
  CHECK(ParseCompletion("").empty());
}

AnnotatedSentence EmsDone() {
  auto item = Adjudicated("g1", "This is a nasty bug", "nasty bug");
  item.status = Status::kEmsDone;
  item.dms.reset();
  item.dms_choice.reset();
  item.dms_candidates.clear();
  return item;
}

TEST_CASE("gen-dms: stub responses pass through in strategy order") {
  const auto item = EmsDone();
  TranscriptLlm llm;
  llm.Add({RenderDmsPrompt(DmsStrategy::kLiteralUse, item.original, {"nasty bug"}), "A\nB", ""});
  llm.Add({RenderDmsPrompt(DmsStrategy::kReplacement, item.original, {"nasty bug"}), "C\nD", ""});
  const auto candidates = GenerateDmsCandidates(item, llm);
  REQUIRE(candidates.size() == 4);
  CHECK(candidates[0].text == "A");
  CHECK(candidates[1].text == "B");
  CHECK(candidates[2].text == "C");
  CHECK(candidates[3].text == "D");
  CHECK(candidates[0].strategy == DmsStrategy::kLiteralUse);
  CHECK(candidates[3].strategy == DmsStrategy::kReplacement);

  auto copy = item;
  CHECK(AttachDmsCandidates(copy, llm));
  CHECK(copy.status == Status::kDmsCandidatesReady);
  CHECK(copy.dms_candidates == std::vector<std::string>{"A", "B", "C", "D"});
  CHECK_NOTHROW(ValidateItem(copy));
}

TEST_CASE("gen-dms: malformed response is retried once, then parked") {
  const auto item = EmsDone();
  const auto p1 = RenderDmsPrompt(DmsStrategy::kLiteralUse, item.original, {"nasty bug"});
  const auto p2 = RenderDmsPrompt(DmsStrategy::kReplacement, item.original, {"nasty bug"});
  TranscriptLlm recovers;
  recovers.Add({p1, "only one", ""});
  recovers.Add({p1, "A\nB", ""});
  recovers.Add({p2, "C\nD", ""});
  CHECK(GenerateDmsCandidates(item, recovers).size() == 4);
  CHECK(recovers.calls() == 3);

  TranscriptLlm broken;
  broken.Add({p1, "one\ntwo\nthree", ""});
  auto parked = item;
  CHECK_FALSE(AttachDmsCandidates(parked, broken));
  CHECK(broken.calls() == 2);
  CHECK(parked.status == Status::kEmsDone);
  REQUIRE(parked.note.has_value());
  CHECK(parked.note->find("malformed") != std::string::npos);
}

TEST_CASE("gen-dms: API failures are retried, then parked") {
  const auto item = EmsDone();
  const auto p1 = RenderDmsPrompt(DmsStrategy::kLiteralUse, item.original, {"nasty bug"});
  const auto p2 = RenderDmsPrompt(DmsStrategy::kReplacement, item.original, {"nasty bug"});
  TranscriptLlm flaky;
  flaky.Add({p1, "", "503"});
  flaky.Add({p1, "A\nB", ""});
  flaky.Add({p2, "C\nD", ""});
  CHECK(GenerateDmsCandidates(item, flaky).size() == 4);

  TranscriptLlm down;
  down.Add({p1, "", "connection refused"});
  DmsGenerationConfig cfg;
  cfg.api_retries = 2;
  auto parked = item;
  CHECK_FALSE(AttachDmsCandidates(parked, down, cfg));
  CHECK(down.calls() == 3);
  CHECK(parked.note->find("connection refused") != std::string::npos);
}

TEST_CASE("gen-dms: items before ems_done are refused") {
  auto item = EmsDone();
  item.status = Status::kVerified;
  item.ems.reset();
  TranscriptLlm llm;
  CHECK_THROWS_AS(GenerateDmsCandidates(item, llm), std::invalid_argument);
}

TEST_CASE("gen-dms: recorded transcript replays to the stored candidates") {
  const auto dir = std::filesystem::path(FIGLANG_TEST_DIR) / "fixtures" / "llm";
  TranscriptLlm llm(dir / "transcript.jsonl");
  const auto dataset = LoadDataset(dir / "items.jsonl");
  const auto expected = ReadLines(dir / "expected_candidates.txt");
  std::vector<std::string> got;
  for (auto item : dataset) {
    REQUIRE(AttachDmsCandidates(item, llm));
    for (const auto &c : item.dms_candidates) got.push_back(c);
  }
  CHECK(got == expected);
}

}  // namespace
}  // namespace figlang::figdata
