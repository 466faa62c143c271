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

#include "figlang/ingest/detect.h"

#include <algorithm>
#include <cctype>
#include <optional>

#include <spdlog/spdlog.h>

#include "json.hpp"

namespace figlang {
namespace ingest {

namespace {

using nlohmann::json;

bool IsWordByte(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

std::vector<DetectedSpan> SpansFromJson(const json &j) {
  std::vector<DetectedSpan> spans;
  for (const auto &s : j) {
    if (!s.is_array() || s.size() != 2) throw DetectorError("span must be [start, end]");
    spans.push_back({s[0].get<std::size_t>(), s[1].get<std::size_t>()});
  }
  return spans;
}

}  // namespace

std::vector<DetectorVerdict> NullDetector::Detect(std::span<const std::string> texts) {
  return std::vector<DetectorVerdict>(texts.size(), DetectorVerdict{{}, label_});
}

std::vector<DetectorVerdict> AcceptAllDetector::Detect(std::span<const std::string> texts) {
  std::vector<DetectorVerdict> out;
  for (const auto &t : texts) {
    out.push_back({t.empty() ? std::vector<DetectedSpan>{} : std::vector<DetectedSpan>{{0, t.size()}},
                   label_});
  }
  return out;
}

LexiconDetector::LexiconDetector(std::vector<std::string> phrases) {
  for (auto &p : phrases) {
    auto lowered = ToLower(Trim(p));
    if (!lowered.empty()) phrases_.push_back(std::move(lowered));
  }
}

LexiconDetector LexiconDetector::FromFile(const std::filesystem::path &path) {
  std::vector<std::string> phrases;
  for (const auto &line : ReadLines(path)) {
    if (!line.empty() && line[0] != '#') phrases.push_back(line);
  }
  return LexiconDetector(std::move(phrases));
}

std::vector<DetectorVerdict> LexiconDetector::Detect(std::span<const std::string> texts) {
  std::vector<DetectorVerdict> out;
  for (const auto &text : texts) {
    const std::string lower = ToLower(text);
    DetectorVerdict v;
    for (const auto &p : phrases_) {
      for (std::size_t pos = lower.find(p); pos != std::string::npos; pos = lower.find(p, pos + 1)) {
        const std::size_t end = pos + p.size();
        const bool left_ok = pos == 0 || !IsWordByte(static_cast<unsigned char>(lower[pos - 1]));
        const bool right_ok = end == lower.size() || !IsWordByte(static_cast<unsigned char>(lower[end]));
        if (left_ok && right_ok) v.spans.push_back({pos, end});
      }
    }
    std::sort(v.spans.begin(), v.spans.end(),
              [](const auto &a, const auto &b) { return std::pair{a.start, a.end} < std::pair{b.start, b.end}; });
    v.spans.erase(std::unique(v.spans.begin(), v.spans.end()), v.spans.end());
    v.label = v.spans.empty() ? "neutral" : "affective";
    out.push_back(std::move(v));
  }
  return out;
}

TranscriptDetector TranscriptDetector::FromFile(const std::filesystem::path &path, std::string name) {
  TranscriptDetector d(std::move(name));
  std::size_t line_no = 0;
  for (const auto &line : ReadLines(path)) {
    ++line_no;
    try {
      const auto j = json::parse(line);
      Record r;
      if (j.contains("spans")) r.spans = SpansFromJson(j["spans"]);
      r.label = j.value("label", std::string());
      r.error = j.value("error", std::string());
      d.Add(j.at("text").get<std::string>(), std::move(r));
    } catch (const std::exception &e) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return d;
}

std::vector<DetectorVerdict> TranscriptDetector::Detect(std::span<const std::string> texts) {
  ++batch_calls_;
  std::vector<DetectorVerdict> out;
  for (const auto &t : texts) {
    const auto it = records_.find(t);
    if (it == records_.end()) throw DetectorError(name_ + ": no scripted verdict for text");
    if (!it->second.error.empty()) throw DetectorError(name_ + ": " + it->second.error);
    out.push_back({it->second.spans, it->second.label});
  }
  return out;
}

HttpDetector::HttpDetector(HttpTransport &transport, std::string url, std::string name)
    : transport_(transport), url_(std::move(url)), name_(std::move(name)) {}

std::vector<DetectorVerdict> HttpDetector::Detect(std::span<const std::string> texts) {
  const json request = {{"texts", std::vector<std::string>(texts.begin(), texts.end())}};
  const auto response = transport_.Post(url_, request.dump(), "application/json", {});
  if (response.status != 200) {
    throw DetectorError(name_ + ": HTTP status " + std::to_string(response.status) +
                        (response.error.empty() ? "" : " (" + response.error + ")"));
  }
  try {
    const auto body = json::parse(response.body);
    const auto &results = body.at("results");
    if (results.size() != texts.size()) throw DetectorError(name_ + ": result count mismatch");
    std::vector<DetectorVerdict> out;
    for (const auto &r : results) {
      out.push_back({r.contains("spans") ? SpansFromJson(r["spans"]) : std::vector<DetectedSpan>{},
                     r.value("label", std::string())});
    }
    return out;
  } catch (const json::exception &e) {
    throw DetectorError(name_ + ": malformed response: " + e.what());
  }
}

namespace {

// Verdicts for a batch; nullopt marks items whose adapter call failed.
std::vector<std::optional<DetectorVerdict>> RunBatch(DetectorAdapter &adapter,
                                                     const std::vector<std::string> &texts,
                                                     std::vector<std::string> &errors) {
  std::vector<std::optional<DetectorVerdict>> out(texts.size());
  try {
    auto verdicts = adapter.Detect(texts);
    if (verdicts.size() != texts.size()) throw DetectorError(adapter.Name() + ": verdict count mismatch");
    for (std::size_t i = 0; i < texts.size(); ++i) out[i] = std::move(verdicts[i]);
    return out;
  } catch (const DetectorError &e) {
    if (texts.size() == 1) {
      errors[0] = e.what();
      return out;
    }
  }
  for (std::size_t i = 0; i < texts.size(); ++i) {
    try {
      auto verdict = adapter.Detect(std::span(&texts[i], 1));
      if (verdict.size() != 1) throw DetectorError(adapter.Name() + ": verdict count mismatch");
      out[i] = std::move(verdict[0]);
    } catch (const DetectorError &e) {
      errors[i] = e.what();
    }
  }
  return out;
}

std::vector<CandidateSpan> ToCandidates(const DetectorVerdict &v, const std::string &text,
                                        const std::string &detector) {
  std::vector<CandidateSpan> out;
  for (const auto &s : v.spans) {
    if (s.start >= s.end || s.end > text.size()) {
      throw DetectorError(detector + ": span [" + std::to_string(s.start) + ", " +
                          std::to_string(s.end) + ") outside the sentence");
    }
    out.push_back({s.start, s.end, text.substr(s.start, s.end - s.start)});
  }
  return out;
}

}  // namespace

ScreenResult ScreenCandidates(const std::vector<Sentence> &sentences, DetectorAdapter &metaphor,
                              DetectorAdapter &idiom, DetectorAdapter &sentiment,
                              std::size_t batch_size) {
  if (batch_size == 0) batch_size = 1;
  ScreenResult result;
  for (std::size_t begin = 0; begin < sentences.size(); begin += batch_size) {
    const std::size_t end = std::min(sentences.size(), begin + batch_size);
    std::vector<std::string> raw, clean;
    for (std::size_t i = begin; i < end; ++i) {
      raw.push_back(sentences[i].text);
      clean.push_back(sentences[i].preprocessed_text);
    }
    std::vector<std::string> errors(raw.size());
    const auto affect = RunBatch(sentiment, clean, errors);
    const auto met = RunBatch(metaphor, raw, errors);
    const auto idi = RunBatch(idiom, raw, errors);
    for (std::size_t k = 0; k < raw.size(); ++k) {
      CandidateSentence c;
      c.sentence = sentences[begin + k];
      std::string error = errors[k];
      if (error.empty() && (!affect[k] || !met[k] || !idi[k])) error = "detector failure";
      if (error.empty()) {
        try {
          c.metaphor_candidates = ToCandidates(*met[k], raw[k], metaphor.Name());
          c.idiom_candidates = ToCandidates(*idi[k], raw[k], idiom.Name());
        } catch (const DetectorError &e) {
          error = e.what();
        }
      }
      if (!error.empty()) {
        c.metaphor_candidates.clear();
        c.idiom_candidates.clear();
        c.affect_screen = AffectScreen::kUnscreened;
        c.error = error;
        spdlog::warn("screen {}: {}", c.sentence.sentence_id, error);
        result.unscreened.push_back(std::move(c));
        continue;
      }
      if (affect[k]->label == "neutral") {
        ++result.neutral;
        continue;
      }
      if (c.metaphor_candidates.empty() && c.idiom_candidates.empty()) {
        ++result.without_candidates;
        continue;
      }
      c.affect_screen = AffectScreen::kAffective;
      result.candidates.push_back(std::move(c));
    }
  }
  return result;
}

}  // namespace ingest
}  // namespace figlang
