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

#include "figlang/annotate/server.h"

#include <spdlog/spdlog.h>

#include "httplib.h"
#include "json.hpp"

#include "figlang/figdata/dataset_json.h"
#include "figlang/figdata/llm.h"
#include "figlang/util/io.h"

namespace figlang {
namespace annotate {

namespace {

using nlohmann::json;

class BadRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void Reply(httplib::Response &res, int status, const json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response &res, int status, std::string_view code, const std::string &message,
                const std::string &rule = {}) {
  json body = {{"error", code}, {"message", message}};
  if (!rule.empty()) body["rule"] = rule;
  Reply(res, status, body);
}

json ItemJson(const ItemView &v) {
  json subs = json::array();
  for (const auto &s : v.dms_submissions) {
    subs.push_back({{"annotator", s.annotator}, {"choice", WireChoice(s.choice)}, {"custom_text", s.custom_text}});
  }
  return {{"item", figdata::ToJson(v.item)},
          {"version", v.version},
          {"awaiting_adjudication", v.awaiting_adjudication},
          {"dms_submissions", subs}};
}

json TaskJson(const AnnotationTask &t, const ItemView &v) {
  json item = {{"id", v.item.id}, {"original", v.item.original}, {"version", v.version}};
  json spans = json::array();
  for (const auto &e : v.item.expressions) {
    spans.push_back({{"surface", e.surface},
                     {"span", {e.span.start, e.span.end}},
                     {"category", figdata::ToString(e.category)},
                     {"scope", figdata::ToString(e.scope)},
                     {"verified", e.verified}});
  }
  item["expressions"] = spans;
  if (v.item.ems) item["ems"] = *v.item.ems;
  json cards = json::array();
  for (std::size_t k = 0; k < v.item.dms_candidates.size(); ++k) {
    const auto strategy = k < 2 ? figdata::DmsStrategy::kLiteralUse : figdata::DmsStrategy::kReplacement;
    cards.push_back({{"choice", "c" + std::to_string(k + 1)},
                     {"text", v.item.dms_candidates[k]},
                     {"strategy", figdata::ToString(strategy)},
                     {"type", k < 2 ? 1 : 2}});
  }
  item["dms_candidates"] = cards;
  json task = {{"task_id", t.task_id},
               {"stage", ToString(t.stage)},
               {"assignee", t.assignee},
               {"lease_expiry_ms", t.lease_expiry_ms},
               {"lease_expiry", FormatUtc(UtcTime{std::chrono::seconds{t.lease_expiry_ms / 1000}})},
               {"item", item}};
  if (t.stage == Stage::kAdjudicate) task["submissions"] = ItemJson(v)["dms_submissions"];
  return task;
}

json ParseBody(const httplib::Request &req) {
  try {
    auto body = json::parse(req.body);
    if (!body.is_object()) throw BadRequest("request body must be a JSON object");
    return body;
  } catch (const json::parse_error &e) {
    throw BadRequest(std::string("invalid JSON: ") + e.what());
  }
}

std::string Annotator(const json &body) {
  if (!body.contains("annotator") || !body["annotator"].is_string()) throw BadRequest("missing 'annotator'");
  return body["annotator"].get<std::string>();
}

std::optional<std::uint64_t> Version(const json &body) {
  if (!body.contains("version")) return std::nullopt;
  if (!body["version"].is_number_unsigned()) throw BadRequest("'version' must be a non-negative integer");
  return body["version"].get<std::uint64_t>();
}

DmsSubmission Submission(const json &body) {
  if (!body.contains("choice") || !body["choice"].is_string()) throw BadRequest("missing 'choice'");
  DmsSubmission s;
  s.annotator = Annotator(body);
  s.choice = ParseWireChoice(body["choice"].get<std::string>());
  if (body.contains("custom_text") && !body["custom_text"].is_null()) {
    s.custom_text = body["custom_text"].get<std::string>();
  }
  return s;
}

std::vector<Verdict> Verdicts(const json &body) {
  if (!body.contains("verdicts") || !body["verdicts"].is_array()) throw BadRequest("missing 'verdicts'");
  std::vector<Verdict> out;
  for (const auto &j : body["verdicts"]) {
    Verdict v;
    v.span = {j.at("span").at(0).get<std::size_t>(), j.at("span").at(1).get<std::size_t>()};
    v.figurative = j.at("figurative").get<bool>();
    if (j.contains("category") && !j["category"].is_null()) {
      v.category = figdata::ParseCategory(j["category"].get<std::string>());
    }
    if (j.contains("scope") && !j["scope"].is_null()) v.scope = figdata::ParseScope(j["scope"].get<std::string>());
    out.push_back(v);
  }
  return out;
}

// Runs `fn`, mapping store exceptions onto status codes.
template <typename Fn>
void Guard(httplib::Response &res, Fn &&fn) {
  try {
    fn();
  } catch (const ValidationError &e) {
    ReplyError(res, 422, "validation", e.what(), e.rule());
  } catch (const ConflictError &e) {
    ReplyError(res, 409, "conflict", e.what());
  } catch (const NotFoundError &e) {
    ReplyError(res, 404, "not_found", e.what());
  } catch (const UnknownAnnotatorError &e) {
    ReplyError(res, 403, "unknown_annotator", e.what());
  } catch (const BadRequest &e) {
    ReplyError(res, 400, "bad_request", e.what());
  } catch (const json::exception &e) {
    ReplyError(res, 400, "bad_request", e.what());
  } catch (const std::invalid_argument &e) {
    ReplyError(res, 400, "bad_request", e.what());
  } catch (const std::exception &e) {
    spdlog::error("annotation server: {}", e.what());
    ReplyError(res, 500, "internal", e.what());
  }
}

}  // namespace

struct AnnotationServer::Impl {
  explicit Impl(AnnotationStore &s) : store(s) {}
  AnnotationStore &store;
  httplib::Server server;
};

AnnotationServer::AnnotationServer(AnnotationStore &store) : impl_(std::make_unique<Impl>(store)) {
  auto &srv = impl_->server;
  AnnotationStore &st = store;

  srv.Get("/tasks/next", [&st](const httplib::Request &req, httplib::Response &res) {
    Guard(res, [&] {
      const auto annotator = req.get_param_value("annotator");
      if (annotator.empty()) throw BadRequest("missing 'annotator' query parameter");
      std::optional<Stage> stage;
      if (req.has_param("stage") && !req.get_param_value("stage").empty()) {
        stage = ParseStage(req.get_param_value("stage"));
      }
      const auto task = st.NextTask(annotator, stage);
      if (!task) return Reply(res, 200, {{"task", nullptr}});
      Reply(res, 200, {{"task", TaskJson(*task, st.GetItem(task->item_id))}});
    });
  });

  srv.Post(R"(/tasks/([^/]+)/(verify|ems|dms|adjudicate))", [&st](const httplib::Request &req,
                                                                 httplib::Response &res) {
    Guard(res, [&] {
      const std::string task_id = req.matches[1];
      const std::string action = req.matches[2];
      const auto body = ParseBody(req);
      ItemView view;
      if (action == "verify") {
        view = st.SubmitVerification(task_id, Annotator(body), Verdicts(body), Version(body));
      } else if (action == "ems") {
        if (!body.contains("ems") || !body["ems"].is_string()) throw BadRequest("missing 'ems'");
        view = st.SubmitEms(task_id, Annotator(body), body["ems"].get<std::string>(), Version(body));
      } else if (action == "dms") {
        view = st.SubmitDmsSelection(task_id, Submission(body), Version(body));
      } else {
        view = st.ResolveAdjudication(task_id, Submission(body), Version(body));
      }
      Reply(res, 200, ItemJson(view));
    });
  });

  srv.Get(R"(/items/([^/]+))", [&st](const httplib::Request &req, httplib::Response &res) {
    Guard(res, [&] { Reply(res, 200, ItemJson(st.GetItem(req.matches[1]))); });
  });

  srv.Get("/stats", [&st](const httplib::Request &, httplib::Response &res) {
    Guard(res, [&] {
      const auto s = st.Stats();
      Reply(res, 200,
            {{"by_status", s.by_status},
             {"open_tasks", s.open_tasks},
             {"active_leases", s.active_leases},
             {"disagreements", s.disagreements},
             {"adjudications", s.adjudications},
             {"events", s.events}});
    });
  });

  srv.Get("/rules", [](const httplib::Request &, httplib::Response &res) {
    res.status = 200;
    res.set_content(std::string(RuleManifestJson()), "application/json");
  });

  srv.set_error_handler([](const httplib::Request &, httplib::Response &res) {
    if (res.body.empty()) ReplyError(res, res.status, "http", "no such endpoint or method");
  });
}

AnnotationServer::~AnnotationServer() { Stop(); }

int AnnotationServer::BindToAnyPort(const std::string &host) { return impl_->server.bind_to_any_port(host); }

bool AnnotationServer::Bind(const std::string &host, int port) { return impl_->server.bind_to_port(host, port); }

bool AnnotationServer::ListenAfterBind() { return impl_->server.listen_after_bind(); }

void AnnotationServer::Stop() {
  if (impl_) impl_->server.stop();
}

bool AnnotationServer::IsRunning() const { return impl_->server.is_running(); }

}  // namespace annotate
}  // namespace figlang
