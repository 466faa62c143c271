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

#ifndef FIGLANG_FIGDATA_LLM_H_
#define FIGLANG_FIGDATA_LLM_H_

#include <deque>
#include <filesystem>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "figlang/figdata/dataset.h"
#include "figlang/util/http.h"

namespace figlang {
namespace figdata {

// Transport or API failure; worth retrying.
class LlmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LlmClient {
 public:
  virtual ~LlmClient() = default;
  // Single-turn completion. Throws LlmError.
  virtual std::string Complete(const std::string &prompt) = 0;
};

struct LlmSettings {
  std::string base_url = "https://api.openai.com/v1";
  std::string model = "gpt-4";
  double temperature = 0.0;
  int max_tokens = 512;
};

// OpenAI-compatible /chat/completions client. The API key is read from
// LLM_API_KEY unless given explicitly.
class ChatCompletionsClient : public LlmClient {
 public:
  ChatCompletionsClient(HttpTransport &transport, LlmSettings settings, std::string api_key = {});

  std::string Complete(const std::string &prompt) override;

 private:
  HttpTransport &transport_;
  LlmSettings settings_;
  std::string api_key_;
};

// Replays a JSONL transcript of {"prompt": ..., "response": ...} or
// {"prompt": ..., "error": ...} records. Repeated prompts are answered in
// recorded order; the last record for a prompt repeats once exhausted.
// Unknown prompts raise LlmError.
class TranscriptLlm : public LlmClient {
 public:
  struct Record {
    std::string prompt;
    std::string response;
    std::string error;
  };

  TranscriptLlm() = default;
  explicit TranscriptLlm(const std::filesystem::path &path);

  void Add(Record record);
  std::string Complete(const std::string &prompt) override;
  std::size_t calls() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::vector<Record>> records_;
  std::map<std::string, std::size_t> cursor_;
  std::size_t calls_ = 0;
};

// Forwards to `inner` and appends each exchange to a transcript file
// readable by TranscriptLlm.
class RecordingLlm : public LlmClient {
 public:
  RecordingLlm(LlmClient &inner, std::filesystem::path path);
  std::string Complete(const std::string &prompt) override;

 private:
  LlmClient &inner_;
  std::filesystem::path path_;
  std::mutex mu_;
};

enum class DmsStrategy { kLiteralUse, kReplacement };

std::string_view ToString(DmsStrategy s);

// Template text with the <insert ...> placeholders left in.
std::string_view PromptTemplate(DmsStrategy strategy);
std::string_view PromptVersion();

// Fills the utterance and the comma-separated expressions into the
// strategy's template.
std::string RenderDmsPrompt(DmsStrategy strategy, std::string_view utterance,
                            const std::vector<std::string> &expressions);

// Splits a completion into sentences: one per non-empty line, with list
// markers ("1.", "2)", "-", "*") and wrapping quotes stripped.
std::vector<std::string> ParseCompletion(std::string_view completion);

struct DmsCandidate {
  std::string text;
  DmsStrategy strategy = DmsStrategy::kLiteralUse;
};

struct DmsGenerationConfig {
  // Extra attempts after an API failure.
  int api_retries = 2;
  // Extra attempts after a completion without exactly two sentences.
  int malformed_retries = 1;
};

class DmsGenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two candidates from the literal-use prompt followed by two from the
// replacement prompt. Throws DmsGenerationError once retries run out and
// std::invalid_argument when the item is not ready for generation.
std::vector<DmsCandidate> GenerateDmsCandidates(const AnnotatedSentence &item, LlmClient &llm,
                                                const DmsGenerationConfig &cfg = {});

// Runs GenerateDmsCandidates on `item`. On success stores the candidates
// and advances the status to dms_candidates_ready; on failure leaves the
// status alone and records the reason in `note`. Returns success.
bool AttachDmsCandidates(AnnotatedSentence &item, LlmClient &llm,
                         const DmsGenerationConfig &cfg = {});

}  // namespace figdata
}  // namespace figlang

#endif  // FIGLANG_FIGDATA_LLM_H_
