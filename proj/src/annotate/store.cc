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

#include "figlang/annotate/store.h"

#include <algorithm>
#include <cstdio>
#include <chrono>
#include <fstream>

#include <spdlog/spdlog.h>

#include "json.hpp"

#include "figlang/util/io.h"

namespace figlang {
namespace annotate {

namespace internal {
extern const char kRuleManifest[];
}  // namespace internal

namespace {

using figdata::AnnotatedSentence;
using figdata::DmsChoice;
using figdata::Status;
using nlohmann::json;

constexpr Stage kStagePriority[] = {Stage::kAdjudicate, Stage::kDmsSelect, Stage::kEms, Stage::kVerify};

struct ItemRecord {
  AnnotatedSentence item;
  std::uint64_t version = 0;
  std::map<std::string, DmsSubmission> submissions;
  bool awaiting_adjudication = false;
};

json SubmissionJson(const DmsSubmission &s) {
  return {{"choice", WireChoice(s.choice)}, {"custom_text", s.custom_text}};
}

DmsSubmission SubmissionFromJson(const std::string &annotator, const json &j) {
  return {annotator, ParseWireChoice(j.at("choice").get<std::string>()), j.value("custom_text", std::string())};
}

json VerdictsJson(const std::vector<Verdict> &verdicts) {
  json out = json::array();
  for (const auto &v : verdicts) {
    json j = {{"span", {v.span.start, v.span.end}}, {"figurative", v.figurative}};
    if (v.category) j["category"] = figdata::ToString(*v.category);
    if (v.scope) j["scope"] = figdata::ToString(*v.scope);
    out.push_back(j);
  }
  return out;
}

std::vector<Verdict> VerdictsFromJson(const json &arr) {
  std::vector<Verdict> out;
  for (const auto &j : arr) {
    Verdict v;
    v.span = {j.at("span").at(0).get<std::size_t>(), j.at("span").at(1).get<std::size_t>()};
    v.figurative = j.at("figurative").get<bool>();
    if (j.contains("category")) v.category = figdata::ParseCategory(j.at("category").get<std::string>());
    if (j.contains("scope")) v.scope = figdata::ParseScope(j.at("scope").get<std::string>());
    out.push_back(v);
  }
  return out;
}

std::string DmsText(const AnnotatedSentence &item, const DmsSubmission &s) {
  if (s.choice == DmsChoice::kNoneCustom) return Trim(s.custom_text);
  return item.dms_candidates.at(static_cast<std::size_t>(s.choice));
}

bool Agree(const DmsSubmission &a, const DmsSubmission &b) {
  if (a.choice != b.choice) return false;
  return a.choice != DmsChoice::kNoneCustom || Trim(a.custom_text) == Trim(b.custom_text);
}

// Shared by live submissions and replay; inputs were validated before
// the event was written.
void ApplyEvent(ItemRecord &rec, const json &event) {
  const std::string type = event.at("type").get<std::string>();
  const json &data = event.at("data");
  auto &item = rec.item;
  if (type == "verify") {
    const auto verdicts = VerdictsFromJson(data.at("verdicts"));
    std::vector<figdata::FigurativeExpression> kept;
    for (const auto &e : item.expressions) {
      for (const auto &v : verdicts) {
        if (v.span == e.span && v.figurative) {
          auto confirmed = e;
          confirmed.verified = true;
          confirmed.category = *v.category;
          confirmed.scope = *v.scope;
          kept.push_back(confirmed);
        }
      }
    }
    item.expressions = std::move(kept);
    item.status = item.expressions.empty() ? Status::kRejected : Status::kVerified;
  } else if (type == "ems") {
    item.ems = data.at("ems").get<std::string>();
    item.status = Status::kEmsDone;
  } else if (type == "dms_candidates") {
    item.dms_candidates = data.at("candidates").get<std::vector<std::string>>();
    item.status = Status::kDmsCandidatesReady;
    item.note.reset();
  } else if (type == "dms_parked") {
    item.note = data.at("note").get<std::string>();
  } else if (type == "dms_submission") {
    const auto annotator = event.at("annotator").get<std::string>();
    rec.submissions[annotator] = SubmissionFromJson(annotator, data);
    if (rec.submissions.size() == 2) {
      const auto &a = rec.submissions.begin()->second;
      const auto &b = std::next(rec.submissions.begin())->second;
      if (Agree(a, b)) {
        item.dms = DmsText(item, a);
        item.dms_choice = a.choice;
        item.status = Status::kDmsSelected;
      } else {
        rec.awaiting_adjudication = true;
      }
    }
  } else if (type == "adjudicate") {
    const auto s = SubmissionFromJson(event.at("annotator").get<std::string>(), data);
    item.dms = DmsText(item, s);
    item.dms_choice = s.choice;
    item.status = Status::kAdjudicated;
    rec.awaiting_adjudication = false;
  } else {
    throw std::invalid_argument("unknown event type '" + type + "'");
  }
  ++rec.version;
}

void ValidateVerdicts(const AnnotatedSentence &item, const std::vector<Verdict> &verdicts) {
  std::set<std::pair<std::size_t, std::size_t>> candidates, seen;
  for (const auto &e : item.expressions) candidates.insert({e.span.start, e.span.end});
  for (const auto &v : verdicts) {
    const std::pair key{v.span.start, v.span.end};
    if (!candidates.count(key)) {
      throw ValidationError("verify.span_is_candidate", "verdict span [" + std::to_string(v.span.start) + ", " +
                                                            std::to_string(v.span.end) +
                                                            ") is not a candidate of item " + item.id);
    }
    if (!seen.insert(key).second) {
      throw ValidationError("verify.one_verdict_per_candidate", "duplicate verdict for one candidate");
    }
    if (v.figurative && (!v.category || !v.scope)) {
      throw ValidationError("verify.figurative_needs_labels", "figurative verdicts need a category and a scope");
    }
  }
  if (seen.size() != candidates.size()) {
    throw ValidationError("verify.one_verdict_per_candidate", "every candidate needs exactly one verdict");
  }
}

}  // namespace

struct AnnotationStore::ItemState : ItemRecord {};

std::string_view ToString(Stage s) {
  switch (s) {
    case Stage::kVerify: return "verify";
    case Stage::kEms: return "ems";
    case Stage::kDmsSelect: return "dms_select";
    case Stage::kAdjudicate: return "adjudicate";
  }
  return "verify";
}

Stage ParseStage(std::string_view s) {
  for (Stage st : kStagePriority) {
    if (ToString(st) == s) return st;
  }
  throw std::invalid_argument("unknown stage '" + std::string(s) + "'");
}

std::int64_t SystemNowMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

DmsChoice ParseWireChoice(std::string_view s) {
  if (s == "c1") return DmsChoice::kC1;
  if (s == "c2") return DmsChoice::kC2;
  if (s == "c3") return DmsChoice::kC3;
  if (s == "c4") return DmsChoice::kC4;
  if (s == "none") return DmsChoice::kNoneCustom;
  throw ValidationError("dms.choice_known", "choice must be c1, c2, c3, c4 or none");
}

std::string_view WireChoice(DmsChoice c) {
  return c == DmsChoice::kNoneCustom ? std::string_view("none") : figdata::ToString(c);
}

void ValidateSubmission(const DmsSubmission &s) {
  const bool has_text = !Trim(s.custom_text).empty();
  if (s.choice == DmsChoice::kNoneCustom && !has_text) {
    throw ValidationError("dms.none_requires_custom_text", "choosing none requires a custom sentence");
  }
  if (s.choice != DmsChoice::kNoneCustom && has_text) {
    throw ValidationError("dms.custom_text_only_with_none", "custom text is only allowed with choice none");
  }
}

std::vector<std::string> ServiceRuleIds() {
  std::vector<std::string> ids = {"verify.span_is_candidate",     "verify.one_verdict_per_candidate",
                                  "verify.figurative_needs_labels", "ems.text_required",
                                  "ems.differs_from_original",    "dms.choice_known",
                                  "dms.none_requires_custom_text", "dms.custom_text_only_with_none"};
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string_view RuleManifestJson() { return internal::kRuleManifest; }

AnnotationStore::AnnotationStore(std::vector<AnnotatedSentence> base, StoreConfig cfg, Clock clock)
    : cfg_(std::move(cfg)), clock_(std::move(clock)) {
  if (cfg_.roster.empty()) throw std::invalid_argument("annotation store: empty roster");
  if (cfg_.lease_ms <= 0) throw std::invalid_argument("annotation store: lease must be positive");
  std::sort(base.begin(), base.end(), [](const auto &a, const auto &b) { return a.id < b.id; });
  for (auto &item : base) {
    const std::string id = item.id;
    ItemState st;
    st.item = std::move(item);
    if (!items_.emplace(id, std::move(st)).second) throw std::invalid_argument("duplicate item id " + id);
    order_.push_back(id);
  }
  if (cfg_.events_path && std::filesystem::exists(*cfg_.events_path)) {
    for (auto &line : ReadLines(*cfg_.events_path)) {
      if (Trim(line).empty()) continue;
      const auto event = json::parse(line);
      ApplyEvent(Item(event.at("item_id").get<std::string>()), event);
      events_.push_back(std::move(line));
    }
    spdlog::info("annotation store: replayed {} event(s)", events_.size());
  }
  Persist();
}

AnnotationStore::~AnnotationStore() = default;

void AnnotationStore::SetCandidateGenerator(figdata::LlmClient *llm, figdata::DmsGenerationConfig cfg) {
  std::lock_guard lock(mu_);
  llm_ = llm;
  gen_cfg_ = cfg;
}

AnnotationStore::ItemState &AnnotationStore::Item(const std::string &id) {
  const auto it = items_.find(id);
  if (it == items_.end()) throw NotFoundError("unknown item '" + id + "'");
  return it->second;
}

const AnnotationStore::ItemState &AnnotationStore::Item(const std::string &id) const {
  const auto it = items_.find(id);
  if (it == items_.end()) throw NotFoundError("unknown item '" + id + "'");
  return it->second;
}

void AnnotationStore::CheckAnnotator(const std::string &annotator) const {
  if (!cfg_.roster.count(annotator)) throw UnknownAnnotatorError("annotator '" + annotator + "' is not on the roster");
}

void AnnotationStore::DropExpiredLeases() {
  const auto now = clock_();
  for (auto it = leases_.begin(); it != leases_.end();) {
    it = now >= it->second.lease_expiry_ms ? leases_.erase(it) : std::next(it);
  }
}

AnnotationTask &AnnotationStore::LeasedTask(const std::string &task_id, const std::string &annotator, Stage stage) {
  CheckAnnotator(annotator);
  DropExpiredLeases();
  const auto it = leases_.find(task_id);
  if (it == leases_.end()) {
    unsigned long long n = 0;
    const bool issued = task_id.size() == 7 && task_id[0] == 't' &&
                        std::sscanf(task_id.c_str() + 1, "%6llu", &n) == 1 && n >= 1 && n < next_task_;
    if (!issued) throw NotFoundError("unknown task '" + task_id + "'");
    throw ConflictError("task '" + task_id + "' has no active lease");
  }
  if (it->second.assignee != annotator) throw ConflictError("task '" + task_id + "' is leased to someone else");
  if (it->second.stage != stage) {
    throw ConflictError("task '" + task_id + "' is a " + std::string(ToString(it->second.stage)) + " task");
  }
  return it->second;
}

void AnnotationStore::CheckVersion(const ItemState &s, std::optional<std::uint64_t> expected) const {
  if (expected && *expected != s.version) {
    throw ConflictError("item '" + s.item.id + "' changed: version " + std::to_string(s.version) + ", expected " +
                        std::to_string(*expected));
  }
}

bool AnnotationStore::Eligible(const ItemState &s, Stage stage, const std::string &annotator) const {
  std::size_t others = 0;
  for (const auto &[id, lease] : leases_) {
    if (lease.item_id == s.item.id && lease.stage == stage && lease.assignee != annotator) ++others;
  }
  switch (stage) {
    case Stage::kVerify:
      return s.item.status == Status::kScreened && !s.item.expressions.empty() && others == 0;
    case Stage::kEms:
      return s.item.status == Status::kVerified && others == 0;
    case Stage::kDmsSelect:
      return s.item.status == Status::kDmsCandidatesReady &&
             s.item.dms_candidates.size() == figdata::kDmsCandidateCount && !s.awaiting_adjudication &&
             !s.submissions.count(annotator) && s.submissions.size() + others < 2;
    case Stage::kAdjudicate:
      return s.awaiting_adjudication && others == 0;
  }
  return false;
}

std::optional<AnnotationTask> AnnotationStore::NextTask(const std::string &annotator, std::optional<Stage> stage) {
  std::lock_guard lock(mu_);
  CheckAnnotator(annotator);
  DropExpiredLeases();
  for (const auto &[id, lease] : leases_) {
    if (lease.assignee == annotator && (!stage || lease.stage == *stage)) return lease;
  }
  for (Stage st : kStagePriority) {
    if (stage && st != *stage) continue;
    for (const auto &item_id : order_) {
      if (!Eligible(items_.at(item_id), st, annotator)) continue;
      char buf[16];
      std::snprintf(buf, sizeof buf, "t%06llu", static_cast<unsigned long long>(next_task_++));
      AnnotationTask task{buf, item_id, st, annotator, clock_() + cfg_.lease_ms};
      leases_.emplace(task.task_id, task);
      return task;
    }
  }
  return std::nullopt;
}

void AnnotationStore::Record(std::string type, const std::string &item_id, const std::string &annotator,
                             std::string data_json) {
  const json event = {{"seq", events_.size() + 1},   {"time", clock_()},
                      {"type", std::move(type)},      {"item_id", item_id},
                      {"annotator", annotator},       {"data", json::parse(data_json)}};
  std::string line = event.dump();
  if (cfg_.events_path) {
    std::ofstream out(*cfg_.events_path, std::ios::app | std::ios::binary);
    out << line << '\n';
    out.flush();
    if (!out) throw IoError("cannot append to event log " + cfg_.events_path->string());
  }
  ApplyEvent(Item(item_id), event);
  events_.push_back(std::move(line));
}

void AnnotationStore::Persist() const {
  if (cfg_.snapshot_path) figdata::SaveDataset(DatasetUnlocked(), *cfg_.snapshot_path);
}

ItemView AnnotationStore::View(const ItemState &s) const {
  ItemView v{s.item, s.version, s.awaiting_adjudication, {}};
  for (const auto &[who, sub] : s.submissions) v.dms_submissions.push_back(sub);
  return v;
}

ItemView AnnotationStore::SubmitVerification(const std::string &task_id, const std::string &annotator,
                                             const std::vector<Verdict> &verdicts,
                                             std::optional<std::uint64_t> expected_version) {
  std::lock_guard lock(mu_);
  const auto task = LeasedTask(task_id, annotator, Stage::kVerify);
  auto &s = Item(task.item_id);
  CheckVersion(s, expected_version);
  ValidateVerdicts(s.item, verdicts);
  Record("verify", s.item.id, annotator, json{{"verdicts", VerdictsJson(verdicts)}}.dump());
  leases_.erase(task_id);
  Persist();
  return View(s);
}

ItemView AnnotationStore::SubmitEms(const std::string &task_id, const std::string &annotator, const std::string &ems,
                                    std::optional<std::uint64_t> expected_version) {
  std::lock_guard lock(mu_);
  const auto task = LeasedTask(task_id, annotator, Stage::kEms);
  auto &s = Item(task.item_id);
  CheckVersion(s, expected_version);
  const std::string text = Trim(ems);
  if (text.empty()) throw ValidationError("ems.text_required", "the equivalent-meaning sentence is empty");
  if (text == Trim(s.item.original)) {
    throw ValidationError("ems.differs_from_original", "the equivalent-meaning sentence repeats the original");
  }
  Record("ems", s.item.id, annotator, json{{"ems", text}}.dump());
  leases_.erase(task_id);
  if (llm_) {
    try {
      const auto candidates = figdata::GenerateDmsCandidates(s.item, *llm_, gen_cfg_);
      std::vector<std::string> texts;
      for (const auto &c : candidates) texts.push_back(c.text);
      Record("dms_candidates", s.item.id, "llm", json{{"candidates", texts}}.dump());
    } catch (const figdata::DmsGenerationError &e) {
      spdlog::warn("annotation store: item {} parked: {}", s.item.id, e.what());
      Record("dms_parked", s.item.id, "llm", json{{"note", std::string("gen-dms parked: ") + e.what()}}.dump());
    }
  }
  Persist();
  return View(s);
}

ItemView AnnotationStore::SubmitDmsSelection(const std::string &task_id, const DmsSubmission &submission,
                                             std::optional<std::uint64_t> expected_version) {
  std::lock_guard lock(mu_);
  ValidateSubmission(submission);
  const auto task = LeasedTask(task_id, submission.annotator, Stage::kDmsSelect);
  auto &s = Item(task.item_id);
  CheckVersion(s, expected_version);
  if (s.submissions.count(submission.annotator)) throw ConflictError("annotator already chose a DMS for this item");
  Record("dms_submission", s.item.id, submission.annotator, SubmissionJson(submission).dump());
  leases_.erase(task_id);
  Persist();
  return View(s);
}

ItemView AnnotationStore::ResolveAdjudication(const std::string &task_id, const DmsSubmission &final_choice,
                                              std::optional<std::uint64_t> expected_version) {
  std::lock_guard lock(mu_);
  ValidateSubmission(final_choice);
  const auto task = LeasedTask(task_id, final_choice.annotator, Stage::kAdjudicate);
  auto &s = Item(task.item_id);
  CheckVersion(s, expected_version);
  if (!s.awaiting_adjudication) throw ConflictError("item '" + s.item.id + "' has no open disagreement");
  Record("adjudicate", s.item.id, final_choice.annotator, SubmissionJson(final_choice).dump());
  leases_.erase(task_id);
  Persist();
  return View(s);
}

ItemView AnnotationStore::GetItem(const std::string &item_id) const {
  std::lock_guard lock(mu_);
  return View(Item(item_id));
}

std::optional<AnnotationTask> AnnotationStore::GetTask(const std::string &task_id) const {
  std::lock_guard lock(mu_);
  const auto it = leases_.find(task_id);
  if (it == leases_.end() || clock_() >= it->second.lease_expiry_ms) return std::nullopt;
  return it->second;
}

StoreStats AnnotationStore::Stats() const {
  std::lock_guard lock(mu_);
  StoreStats st;
  for (Status s : {Status::kScreened, Status::kVerified, Status::kEmsDone, Status::kDmsCandidatesReady,
                   Status::kDmsSelected, Status::kAdjudicated, Status::kRejected}) {
    st.by_status[std::string(figdata::ToString(s))] = 0;
  }
  for (Stage stage : kStagePriority) st.open_tasks[std::string(ToString(stage))] = 0;
  for (const auto &id : order_) {
    const auto &s = items_.at(id);
    ++st.by_status[std::string(figdata::ToString(s.item.status))];
    if (s.item.status == Status::kScreened && !s.item.expressions.empty()) ++st.open_tasks["verify"];
    if (s.item.status == Status::kVerified) ++st.open_tasks["ems"];
    if (s.item.status == Status::kDmsCandidatesReady && !s.awaiting_adjudication &&
        s.item.dms_candidates.size() == figdata::kDmsCandidateCount) {
      st.open_tasks["dms_select"] += 2 - s.submissions.size();
    }
    if (s.awaiting_adjudication) ++st.open_tasks["adjudicate"];
    if (s.submissions.size() == 2 &&
        !Agree(s.submissions.begin()->second, std::next(s.submissions.begin())->second)) {
      ++st.disagreements;
    }
    if (s.item.status == Status::kAdjudicated) ++st.adjudications;
  }
  const auto now = clock_();
  for (const auto &[id, lease] : leases_) st.active_leases += now < lease.lease_expiry_ms;
  st.events = events_.size();
  return st;
}

std::vector<AnnotatedSentence> AnnotationStore::Dataset() const {
  std::lock_guard lock(mu_);
  return DatasetUnlocked();
}

std::vector<AnnotatedSentence> AnnotationStore::DatasetUnlocked() const {
  std::vector<AnnotatedSentence> out;
  for (const auto &id : order_) out.push_back(items_.at(id).item);
  return out;
}

std::vector<std::string> AnnotationStore::Events() const {
  std::lock_guard lock(mu_);
  return events_;
}

std::vector<AnnotatedSentence> ReplayEvents(std::vector<AnnotatedSentence> base,
                                            const std::vector<std::string> &events) {
  std::map<std::string, ItemRecord> records;
  std::vector<std::string> order;
  std::sort(base.begin(), base.end(), [](const auto &a, const auto &b) { return a.id < b.id; });
  for (auto &item : base) {
    order.push_back(item.id);
    records[item.id].item = std::move(item);
  }
  for (const auto &line : events) {
    if (Trim(line).empty()) continue;
    const auto event = json::parse(line);
    const auto it = records.find(event.at("item_id").get<std::string>());
    if (it == records.end()) throw NotFoundError("event for unknown item " + event.at("item_id").dump());
    ApplyEvent(it->second, event);
  }
  std::vector<AnnotatedSentence> out;
  for (const auto &id : order) out.push_back(std::move(records[id].item));
  return out;
}

}  // namespace annotate
}  // namespace figlang
