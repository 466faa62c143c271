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

#include "figlang/figdata/dataset.h"

#include <array>
#include <set>
#include <sstream>

#include "figlang/figdata/dataset_json.h"
#include "figlang/util/io.h"

namespace figlang {
namespace figdata {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 7> kStatusNames = {
    "screened", "verified", "ems_done", "dms_candidates_ready",
    "dms_selected", "adjudicated", "rejected"};
constexpr std::array<std::string_view, 5> kChoiceNames = {"c1", "c2", "c3", "c4", "none_custom"};

template <std::size_t N>
std::size_t IndexOf(const std::array<std::string_view, N> &names, std::string_view s,
                    const char *what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return i;
  }
  throw std::invalid_argument(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

}  // namespace

std::string_view ToString(Category c) { return c == Category::kMetaphor ? "metaphor" : "idiom"; }
std::string_view ToString(Scope s) { return s == Scope::kSeSpecific ? "se_specific" : "general"; }
std::string_view ToString(Status s) { return kStatusNames[static_cast<std::size_t>(s)]; }
std::string_view ToString(DmsChoice c) { return kChoiceNames[static_cast<std::size_t>(c)]; }

Category ParseCategory(std::string_view s) {
  if (s == "metaphor") return Category::kMetaphor;
  if (s == "idiom") return Category::kIdiom;
  throw std::invalid_argument("unknown category '" + std::string(s) + "'");
}

Scope ParseScope(std::string_view s) {
  if (s == "se_specific") return Scope::kSeSpecific;
  if (s == "general") return Scope::kGeneral;
  throw std::invalid_argument("unknown scope '" + std::string(s) + "'");
}

Status ParseStatus(std::string_view s) {
  return static_cast<Status>(IndexOf(kStatusNames, s, "status"));
}

DmsChoice ParseDmsChoice(std::string_view s) {
  return static_cast<DmsChoice>(IndexOf(kChoiceNames, s, "dms_choice"));
}

bool AtLeast(Status s, Status threshold) {
  if (s == Status::kRejected || threshold == Status::kRejected) return s == threshold;
  return static_cast<int>(s) >= static_cast<int>(threshold);
}

SchemaError::SchemaError(std::size_t line, std::string field, const std::string &message)
    : std::runtime_error((line ? "line " + std::to_string(line) + ": " : std::string()) +
                         "field '" + field + "': " + message),
      line_(line),
      field_(std::move(field)) {}

std::vector<const FigurativeExpression *> VerifiedExpressions(const AnnotatedSentence &item) {
  std::vector<const FigurativeExpression *> out;
  for (const auto &e : item.expressions) {
    if (e.verified) out.push_back(&e);
  }
  return out;
}

void ValidateItem(const AnnotatedSentence &item, std::size_t line) {
  auto fail = [&](const char *field, const std::string &msg) {
    throw SchemaError(line, field, msg);
  };
  if (item.id.empty()) fail("id", "must be non-empty");
  if (item.original.empty()) fail("original", "must be non-empty");

  for (const auto &e : item.expressions) {
    if (e.span.start >= e.span.end || e.span.end > item.original.size()) {
      fail("expressions", "span [" + std::to_string(e.span.start) + ", " +
                              std::to_string(e.span.end) + ") outside the sentence");
    }
    if (item.original.compare(e.span.start, e.span.end - e.span.start, e.surface) != 0) {
      fail("expressions", "span text does not equal surface '" + e.surface + "'");
    }
  }

  const auto verified = VerifiedExpressions(item);
  const Status s = item.status;
  if (s == Status::kRejected) {
    if (!verified.empty()) fail("status", "rejected item holds verified expressions");
  } else if (AtLeast(s, Status::kVerified)) {
    if (verified.empty()) fail("expressions", "no verified expression at status " + std::string(ToString(s)));
    if (verified.size() != item.expressions.size()) {
      fail("expressions", "unverified candidate left at status " + std::string(ToString(s)));
    }
  } else if (!verified.empty()) {
    fail("expressions", "verified expression on a screened item");
  }

  const bool want_ems = AtLeast(s, Status::kEmsDone);
  if (item.ems.has_value() != want_ems) {
    fail("ems", want_ems ? "required at status " + std::string(ToString(s))
                         : "not allowed at status " + std::string(ToString(s)));
  }
  if (item.ems && item.ems->empty()) fail("ems", "must be non-empty");

  const bool want_dms = AtLeast(s, Status::kDmsSelected);
  if (item.dms.has_value() != want_dms) {
    fail("dms", want_dms ? "required at status " + std::string(ToString(s))
                         : "not allowed at status " + std::string(ToString(s)));
  }
  if (item.dms && item.dms->empty()) fail("dms", "must be non-empty");
  if (item.dms_choice.has_value() != want_dms) {
    fail("dms_choice", want_dms ? "required at status " + std::string(ToString(s))
                                : "not allowed at status " + std::string(ToString(s)));
  }

  if (!item.dms_candidates.empty() && item.dms_candidates.size() != kDmsCandidateCount) {
    fail("dms_candidates", "must hold exactly 4 entries");
  }
  if (s == Status::kDmsCandidatesReady && item.dms_candidates.size() != kDmsCandidateCount) {
    fail("dms_candidates", "required at status dms_candidates_ready");
  }
  if (!item.dms_candidates.empty() && !AtLeast(s, Status::kDmsCandidatesReady)) {
    fail("dms_candidates", "not allowed at status " + std::string(ToString(s)));
  }
  if (item.dms_choice && *item.dms_choice != DmsChoice::kNoneCustom &&
      !item.dms_candidates.empty()) {
    const auto k = static_cast<std::size_t>(*item.dms_choice);
    if (*item.dms != item.dms_candidates[k]) {
      fail("dms", "does not equal the chosen candidate " + std::string(ToString(*item.dms_choice)));
    }
  }
}

json ToJson(const AnnotatedSentence &item) {
  json j;
  j["id"] = item.id;
  j["original"] = item.original;
  j["status"] = std::string(ToString(item.status));
  json exprs = json::array();
  for (const auto &e : item.expressions) {
    exprs.push_back({{"surface", e.surface},
                     {"span", {e.span.start, e.span.end}},
                     {"category", std::string(ToString(e.category))},
                     {"scope", std::string(ToString(e.scope))},
                     {"verified", e.verified}});
  }
  j["expressions"] = std::move(exprs);
  if (item.ems) j["ems"] = *item.ems;
  if (item.dms) j["dms"] = *item.dms;
  if (!item.dms_candidates.empty()) j["dms_candidates"] = item.dms_candidates;
  if (item.dms_choice) j["dms_choice"] = std::string(ToString(*item.dms_choice));
  if (!item.provenance.empty()) {
    j["provenance"] = {{"repo_slug", item.provenance.repo_slug},
                       {"comment_id", item.provenance.comment_id},
                       {"sentence_id", item.provenance.sentence_id}};
  }
  if (item.note) j["note"] = *item.note;
  return j;
}

namespace {

const std::set<std::string> kItemFields = {"id", "original", "status", "expressions", "ems",
                                           "dms", "dms_candidates", "dms_choice", "provenance",
                                           "note"};
const std::set<std::string> kExpressionFields = {"surface", "span", "category", "scope",
                                                 "verified"};

const json &Require(const json &j, const char *field, std::size_t line) {
  const auto it = j.find(field);
  if (it == j.end()) throw SchemaError(line, field, "missing");
  return *it;
}

std::string RequireString(const json &j, const char *field, std::size_t line) {
  const auto &v = Require(j, field, line);
  if (!v.is_string()) throw SchemaError(line, field, "must be a string");
  return v.get<std::string>();
}

std::optional<std::string> OptionalString(const json &j, const char *field, std::size_t line) {
  const auto it = j.find(field);
  if (it == j.end()) return std::nullopt;
  if (!it->is_string()) throw SchemaError(line, field, "must be a string");
  return it->get<std::string>();
}

template <typename Fn>
auto ParseEnum(const std::string &value, const char *field, std::size_t line, Fn &&fn) {
  try {
    return fn(value);
  } catch (const std::invalid_argument &e) {
    throw SchemaError(line, field, e.what());
  }
}

}  // namespace

AnnotatedSentence ItemFromJson(const json &j, std::size_t line) {
  if (!j.is_object()) throw SchemaError(line, "<record>", "must be a JSON object");
  for (const auto &[key, _] : j.items()) {
    if (!kItemFields.count(key)) throw SchemaError(line, key, "unknown field");
  }
  AnnotatedSentence item;
  item.id = RequireString(j, "id", line);
  item.original = RequireString(j, "original", line);
  item.status = ParseEnum(RequireString(j, "status", line), "status", line, ParseStatus);
  const auto &exprs = Require(j, "expressions", line);
  if (!exprs.is_array()) throw SchemaError(line, "expressions", "must be an array");
  for (const auto &e : exprs) {
    if (!e.is_object()) throw SchemaError(line, "expressions", "entries must be objects");
    for (const auto &[key, _] : e.items()) {
      if (!kExpressionFields.count(key)) throw SchemaError(line, "expressions." + key, "unknown field");
    }
    FigurativeExpression fe;
    fe.surface = RequireString(e, "surface", line);
    const auto &span = Require(e, "span", line);
    if (!span.is_array() || span.size() != 2 || !span[0].is_number_unsigned() ||
        !span[1].is_number_unsigned()) {
      throw SchemaError(line, "span", "must be [start, end] with non-negative integers");
    }
    fe.span = {span[0].get<std::size_t>(), span[1].get<std::size_t>()};
    fe.category = ParseEnum(RequireString(e, "category", line), "category", line, ParseCategory);
    fe.scope = ParseEnum(RequireString(e, "scope", line), "scope", line, ParseScope);
    const auto &verified = Require(e, "verified", line);
    if (!verified.is_boolean()) throw SchemaError(line, "verified", "must be a boolean");
    fe.verified = verified.get<bool>();
    item.expressions.push_back(std::move(fe));
  }
  item.ems = OptionalString(j, "ems", line);
  item.dms = OptionalString(j, "dms", line);
  if (const auto it = j.find("dms_candidates"); it != j.end()) {
    if (!it->is_array()) throw SchemaError(line, "dms_candidates", "must be an array");
    for (const auto &c : *it) {
      if (!c.is_string()) throw SchemaError(line, "dms_candidates", "entries must be strings");
      item.dms_candidates.push_back(c.get<std::string>());
    }
  }
  if (auto choice = OptionalString(j, "dms_choice", line)) {
    item.dms_choice = ParseEnum(*choice, "dms_choice", line, ParseDmsChoice);
  }
  if (const auto it = j.find("provenance"); it != j.end()) {
    if (!it->is_object()) throw SchemaError(line, "provenance", "must be an object");
    item.provenance.repo_slug = OptionalString(*it, "repo_slug", line).value_or("");
    item.provenance.comment_id = OptionalString(*it, "comment_id", line).value_or("");
    item.provenance.sentence_id = OptionalString(*it, "sentence_id", line).value_or("");
  }
  item.note = OptionalString(j, "note", line);
  return item;
}

std::string ToCanonicalJsonl(const std::vector<AnnotatedSentence> &items) {
  std::string out;
  for (const auto &item : items) {
    out += ToJson(item).dump();
    out += '\n';
  }
  return out;
}

std::vector<AnnotatedSentence> ParseJsonl(std::string_view text) {
  std::vector<AnnotatedSentence> items;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error &e) {
      throw SchemaError(line_no, "<record>", std::string("invalid JSON: ") + e.what());
    }
    auto item = ItemFromJson(j, line_no);
    ValidateItem(item, line_no);
    if (!ids.insert(item.id).second) throw SchemaError(line_no, "id", "duplicate id '" + item.id + "'");
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<AnnotatedSentence> LoadDataset(const std::filesystem::path &path) {
  return ParseJsonl(ReadFile(path));
}

void SaveDataset(const std::vector<AnnotatedSentence> &items, const std::filesystem::path &path) {
  WriteFileAtomic(path, ToCanonicalJsonl(items));
}

}  // namespace figdata
}  // namespace figlang
