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

#include "figlang/figdata/llm.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

#include <spdlog/spdlog.h>

#include "json.hpp"

#include "figlang/util/io.h"

namespace figlang {
namespace figdata {

namespace internal {
extern const char kLiteralPromptV1[];
extern const char kReplacePromptV1[];
}  // namespace internal

namespace {

using nlohmann::json;

std::string_view StripTrailingNewlines(std::string_view s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

void ReplaceAll(std::string &s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

}  // namespace

ChatCompletionsClient::ChatCompletionsClient(HttpTransport &transport, LlmSettings settings,
                                             std::string api_key)
    : transport_(transport), settings_(std::move(settings)), api_key_(std::move(api_key)) {
  if (api_key_.empty()) {
    if (const char *env = std::getenv("LLM_API_KEY")) api_key_ = env;
  }
}

std::string ChatCompletionsClient::Complete(const std::string &prompt) {
  if (api_key_.empty()) throw LlmError("LLM_API_KEY is not set");
  const json request = {{"model", settings_.model},
                        {"temperature", settings_.temperature},
                        {"max_tokens", settings_.max_tokens},
                        {"messages", json::array({{{"role", "user"}, {"content", prompt}}})}};
  std::string url = settings_.base_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  const auto response = transport_.Post(url + "/chat/completions", request.dump(), "application/json",
                                        {{"Authorization", "Bearer " + api_key_}});
  if (response.status != 200) {
    throw LlmError("LLM request failed with status " + std::to_string(response.status) +
                   (response.error.empty() ? "" : ": " + response.error));
  }
  try {
    const auto body = json::parse(response.body);
    return body.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception &e) {
    throw LlmError(std::string("unexpected LLM response: ") + e.what());
  }
}

TranscriptLlm::TranscriptLlm(const std::filesystem::path &path) {
  std::size_t line_no = 0;
  for (const auto &line : ReadLines(path)) {
    ++line_no;
    try {
      const auto j = json::parse(line);
      Add({j.at("prompt").get<std::string>(), j.value("response", std::string()),
           j.value("error", std::string())});
    } catch (const json::exception &e) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void TranscriptLlm::Add(Record record) {
  std::lock_guard lock(mu_);
  records_[record.prompt].push_back(std::move(record));
}

std::string TranscriptLlm::Complete(const std::string &prompt) {
  std::lock_guard lock(mu_);
  ++calls_;
  const auto it = records_.find(prompt);
  if (it == records_.end()) throw LlmError("prompt not in transcript");
  auto &cursor = cursor_[prompt];
  const Record &record = it->second[std::min(cursor, it->second.size() - 1)];
  ++cursor;
  if (!record.error.empty()) throw LlmError(record.error);
  return record.response;
}

std::size_t TranscriptLlm::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

RecordingLlm::RecordingLlm(LlmClient &inner, std::filesystem::path path)
    : inner_(inner), path_(std::move(path)) {}

std::string RecordingLlm::Complete(const std::string &prompt) {
  json record = {{"prompt", prompt}};
  std::string response;
  bool failed = false;
  std::string error;
  try {
    response = inner_.Complete(prompt);
    record["response"] = response;
  } catch (const LlmError &e) {
    failed = true;
    error = e.what();
    record["error"] = error;
  }
  {
    std::lock_guard lock(mu_);
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    out << record.dump() << '\n';
    if (!out) throw IoError("cannot append to " + path_.string());
  }
  if (failed) throw LlmError(error);
  return response;
}

std::string_view ToString(DmsStrategy s) {
  return s == DmsStrategy::kLiteralUse ? "literal_use" : "replacement";
}

std::string_view PromptTemplate(DmsStrategy strategy) {
  return StripTrailingNewlines(strategy == DmsStrategy::kLiteralUse ? internal::kLiteralPromptV1
                                                                    : internal::kReplacePromptV1);
}

std::string_view PromptVersion() { return "v1"; }

std::string RenderDmsPrompt(DmsStrategy strategy, std::string_view utterance,
                            const std::vector<std::string> &expressions) {
  std::string joined;
  for (const auto &e : expressions) {
    if (!joined.empty()) joined += ", ";
    joined += e;
  }
  std::string prompt(PromptTemplate(strategy));
  ReplaceAll(prompt, "<insert utterance>", utterance);
  ReplaceAll(prompt, "<insert figurative expressions>", joined);
  ReplaceAll(prompt, "<insert figuration expressions>", joined);
  return prompt;
}

std::vector<std::string> ParseCompletion(std::string_view completion) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= completion.size()) {
    auto nl = completion.find('\n', pos);
    if (nl == std::string_view::npos) nl = completion.size();
    std::string line = Trim(completion.substr(pos, nl - pos));
    pos = nl + 1;
    std::size_t i = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
    if (i > 0 && i < line.size() && (line[i] == '.' || line[i] == ')' || line[i] == ':')) {
      line = Trim(std::string_view(line).substr(i + 1));
    } else if (!line.empty() && (line[0] == '-' || line[0] == '*')) {
      line = Trim(std::string_view(line).substr(1));
    }
    if (line.size() >= 2 && line.front() == '"' && line.back() == '"') {
      line = Trim(std::string_view(line).substr(1, line.size() - 2));
    }
    if (!line.empty()) out.push_back(std::move(line));
  }
  return out;
}

namespace {

std::vector<std::string> RunPrompt(const std::string &prompt, LlmClient &llm,
                                   const DmsGenerationConfig &cfg, const std::string &item_id) {
  int api_failures = 0;
  int malformed = 0;
  std::string last_error;
  while (true) {
    std::string completion;
    try {
      completion = llm.Complete(prompt);
    } catch (const LlmError &e) {
      last_error = e.what();
      if (++api_failures > cfg.api_retries) {
        throw DmsGenerationError("LLM failure after " + std::to_string(api_failures) +
                                 " attempts: " + last_error);
      }
      spdlog::warn("gen-dms {}: LLM failure ({}), retrying", item_id, last_error);
      continue;
    }
    auto sentences = ParseCompletion(completion);
    if (sentences.size() == 2) return sentences;
    if (++malformed > cfg.malformed_retries) {
      throw DmsGenerationError("malformed completion: expected 2 sentences, got " +
                               std::to_string(sentences.size()));
    }
    spdlog::warn("gen-dms {}: expected 2 sentences, got {}, retrying", item_id, sentences.size());
  }
}

}  // namespace

std::vector<DmsCandidate> GenerateDmsCandidates(const AnnotatedSentence &item, LlmClient &llm,
                                                const DmsGenerationConfig &cfg) {
  if (!AtLeast(item.status, Status::kEmsDone)) {
    throw std::invalid_argument("item " + item.id + " has status " +
                                std::string(ToString(item.status)) + ", needs ems_done");
  }
  std::vector<std::string> expressions;
  for (const auto *e : VerifiedExpressions(item)) expressions.push_back(e->surface);
  if (expressions.empty()) throw std::invalid_argument("item " + item.id + " has no verified expressions");

  std::vector<DmsCandidate> out;
  for (auto strategy : {DmsStrategy::kLiteralUse, DmsStrategy::kReplacement}) {
    for (auto &text : RunPrompt(RenderDmsPrompt(strategy, item.original, expressions), llm, cfg, item.id)) {
      out.push_back({std::move(text), strategy});
    }
  }
  return out;
}

bool AttachDmsCandidates(AnnotatedSentence &item, LlmClient &llm, const DmsGenerationConfig &cfg) {
  try {
    const auto candidates = GenerateDmsCandidates(item, llm, cfg);
    item.dms_candidates.clear();
    for (const auto &c : candidates) item.dms_candidates.push_back(c.text);
    if (item.status == Status::kEmsDone) item.status = Status::kDmsCandidatesReady;
    item.note.reset();
    return true;
  } catch (const DmsGenerationError &e) {
    item.note = std::string("gen-dms parked: ") + e.what();
    spdlog::error("gen-dms {}: {}", item.id, e.what());
    return false;
  }
}

}  // namespace figdata
}  // namespace figlang
