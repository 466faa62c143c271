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

#ifndef FIGLANG_ANNOTATE_STORE_H_
#define FIGLANG_ANNOTATE_STORE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "figlang/figdata/dataset.h"
#include "figlang/figdata/llm.h"

namespace figlang {
namespace annotate {

// Stale lease, wrong stage or version mismatch (HTTP 409).
class ConflictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Submission breaks a rule from the shared rule manifest (HTTP 422).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string rule, const std::string &message)
      : std::runtime_error(message), rule_(std::move(rule)) {}
  const std::string &rule() const { return rule_; }

 private:
  std::string rule_;
};

// Unknown task or item (HTTP 404).
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Annotator not on the roster (HTTP 403).
class UnknownAnnotatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Stage { kVerify, kEms, kDmsSelect, kAdjudicate };

std::string_view ToString(Stage s);
Stage ParseStage(std::string_view s);

// Milliseconds since the Unix epoch.
using Clock = std::function<std::int64_t()>;
std::int64_t SystemNowMs();

struct AnnotationTask {
  std::string task_id;
  std::string item_id;
  Stage stage = Stage::kVerify;
  std::string assignee;
  std::int64_t lease_expiry_ms = 0;
};

struct Verdict {
  figdata::Span span;
  bool figurative = false;
  std::optional<figdata::Category> category;
  std::optional<figdata::Scope> scope;
};

struct DmsSubmission {
  std::string annotator;
  figdata::DmsChoice choice = figdata::DmsChoice::kC1;
  std::string custom_text;
};

// Wire names: c1..c4 and "none". Throws ValidationError (dms.choice_known).
figdata::DmsChoice ParseWireChoice(std::string_view s);
std::string_view WireChoice(figdata::DmsChoice c);

// Throws ValidationError for the none/custom text rules.
void ValidateSubmission(const DmsSubmission &s);

// Rule ids the service can raise, sorted.
std::vector<std::string> ServiceRuleIds();
// Rule manifest bundled with the build.
std::string_view RuleManifestJson();

struct StoreConfig {
  std::set<std::string> roster;
  std::int64_t lease_ms = 30 * 60 * 1000;
  // Append-only event log; replayed on open when it exists.
  std::optional<std::filesystem::path> events_path;
  // Rewritten after every change.
  std::optional<std::filesystem::path> snapshot_path;
};

struct StoreStats {
  std::map<std::string, std::size_t> by_status;
  std::map<std::string, std::size_t> open_tasks;
  std::size_t active_leases = 0;
  std::size_t disagreements = 0;
  std::size_t adjudications = 0;
  std::size_t events = 0;
};

// Item plus the version used for compare-and-swap.
struct ItemView {
  figdata::AnnotatedSentence item;
  std::uint64_t version = 0;
  bool awaiting_adjudication = false;
  // DMS choices recorded so far, by annotator name.
  std::vector<DmsSubmission> dms_submissions;
};

// Workflow state: items, DMS submissions, leases and the event log.
// Every public method takes the store mutex, so reads see a consistent
// snapshot and per-item writes are serialized. Events are appended
// before they are applied; replaying the log over the base dataset
// rebuilds the state.
class AnnotationStore {
 public:
  AnnotationStore(std::vector<figdata::AnnotatedSentence> base, StoreConfig cfg, Clock clock = SystemNowMs);
  ~AnnotationStore();
  AnnotationStore(const AnnotationStore &) = delete;
  AnnotationStore &operator=(const AnnotationStore &) = delete;

  // Optional: when set, EMS submissions trigger DMS candidate generation.
  void SetCandidateGenerator(figdata::LlmClient *llm, figdata::DmsGenerationConfig cfg = {});

  // The annotator's unexpired lease matching `stage` if any, otherwise a
  // new lease on the first eligible item (id order) of the latest stage
  // with work: adjudicate, dms_select, ems, verify.
  std::optional<AnnotationTask> NextTask(const std::string &annotator, std::optional<Stage> stage = {});

  // `expected_version` enables compare-and-swap on the item.
  ItemView SubmitVerification(const std::string &task_id, const std::string &annotator,
                              const std::vector<Verdict> &verdicts,
                              std::optional<std::uint64_t> expected_version = {});
  ItemView SubmitEms(const std::string &task_id, const std::string &annotator, const std::string &ems,
                     std::optional<std::uint64_t> expected_version = {});
  ItemView SubmitDmsSelection(const std::string &task_id, const DmsSubmission &submission,
                              std::optional<std::uint64_t> expected_version = {});
  ItemView ResolveAdjudication(const std::string &task_id, const DmsSubmission &final_choice,
                               std::optional<std::uint64_t> expected_version = {});

  ItemView GetItem(const std::string &item_id) const;
  std::optional<AnnotationTask> GetTask(const std::string &task_id) const;
  StoreStats Stats() const;
  // Items in id order.
  std::vector<figdata::AnnotatedSentence> Dataset() const;
  // Log lines, one JSON object each.
  std::vector<std::string> Events() const;

  const StoreConfig &config() const { return cfg_; }

 private:
  struct ItemState;

  ItemState &Item(const std::string &id);
  const ItemState &Item(const std::string &id) const;
  void CheckAnnotator(const std::string &annotator) const;
  AnnotationTask &LeasedTask(const std::string &task_id, const std::string &annotator, Stage stage);
  void CheckVersion(const ItemState &s, std::optional<std::uint64_t> expected) const;
  bool Eligible(const ItemState &s, Stage stage, const std::string &annotator) const;
  void Record(std::string type, const std::string &item_id, const std::string &annotator, std::string data_json);
  ItemView View(const ItemState &s) const;
  std::vector<figdata::AnnotatedSentence> DatasetUnlocked() const;
  void Persist() const;
  void DropExpiredLeases();

  StoreConfig cfg_;
  Clock clock_;
  figdata::LlmClient *llm_ = nullptr;
  figdata::DmsGenerationConfig gen_cfg_;
  mutable std::mutex mu_;
  std::vector<std::string> order_;
  std::map<std::string, ItemState> items_;
  std::map<std::string, AnnotationTask> leases_;
  std::vector<std::string> events_;
  std::uint64_t next_task_ = 1;
};

// Applies a log to a base dataset without lease or roster checks; the
// result is in id order.
std::vector<figdata::AnnotatedSentence> ReplayEvents(std::vector<figdata::AnnotatedSentence> base,
                                                     const std::vector<std::string> &events);

}  // namespace annotate
}  // namespace figlang

#endif  // FIGLANG_ANNOTATE_STORE_H_
