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

#ifndef FIGLANG_INGEST_DETECT_H_
#define FIGLANG_INGEST_DETECT_H_

#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "figlang/ingest/types.h"
#include "figlang/util/http.h"

namespace figlang {
namespace ingest {

class DetectorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Byte span flagged by a detector.
struct DetectedSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const DetectedSpan &) const = default;
};

struct DetectorVerdict {
  std::vector<DetectedSpan> spans;
  // Free-form label; sentiment screens use "neutral" for non-affective text.
  std::string label;
};

// Batch text-in, span/label-out contract for third-party tools.
class DetectorAdapter {
 public:
  virtual ~DetectorAdapter() = default;
  virtual std::string Name() const = 0;
  // One verdict per text. Throws DetectorError.
  virtual std::vector<DetectorVerdict> Detect(std::span<const std::string> texts) = 0;
};

// Flags nothing, labels everything with `label`.
class NullDetector : public DetectorAdapter {
 public:
  explicit NullDetector(std::string label = "neutral") : label_(std::move(label)) {}
  std::string Name() const override { return "null"; }
  std::vector<DetectorVerdict> Detect(std::span<const std::string> texts) override;

 private:
  std::string label_;
};

// Flags the whole text and labels it with `label`.
class AcceptAllDetector : public DetectorAdapter {
 public:
  explicit AcceptAllDetector(std::string label = "affective") : label_(std::move(label)) {}
  std::string Name() const override { return "accept-all"; }
  std::vector<DetectorVerdict> Detect(std::span<const std::string> texts) override;

 private:
  std::string label_;
};

// Case-insensitive whole-word phrase search. Label is "affective" when
// anything is found, "neutral" otherwise.
class LexiconDetector : public DetectorAdapter {
 public:
  explicit LexiconDetector(std::vector<std::string> phrases);
  // One phrase per line; '#' starts a comment.
  static LexiconDetector FromFile(const std::filesystem::path &path);

  std::string Name() const override { return "lexicon"; }
  std::vector<DetectorVerdict> Detect(std::span<const std::string> texts) override;

 private:
  std::vector<std::string> phrases_;
};

// Scripted verdicts keyed by exact text, from JSONL records
// {"text": ..., "spans": [[s, e], ...], "label": ..., "error": ...}.
// Unknown texts and records with an error raise DetectorError.
class TranscriptDetector : public DetectorAdapter {
 public:
  struct Record {
    std::vector<DetectedSpan> spans;
    std::string label;
    std::string error;
  };

  explicit TranscriptDetector(std::string name = "transcript") : name_(std::move(name)) {}
  static TranscriptDetector FromFile(const std::filesystem::path &path, std::string name = "transcript");

  void Add(const std::string &text, Record record) { records_[text] = std::move(record); }
  std::string Name() const override { return name_; }
  std::vector<DetectorVerdict> Detect(std::span<const std::string> texts) override;
  std::size_t batch_calls() const { return batch_calls_; }

 private:
  std::string name_;
  std::map<std::string, Record> records_;
  std::size_t batch_calls_ = 0;
};

// POSTs {"texts": [...]} to `url`, expects
// {"results": [{"spans": [[s, e], ...], "label": "..."}, ...]}.
class HttpDetector : public DetectorAdapter {
 public:
  HttpDetector(HttpTransport &transport, std::string url, std::string name = "http");
  std::string Name() const override { return name_; }
  std::vector<DetectorVerdict> Detect(std::span<const std::string> texts) override;

 private:
  HttpTransport &transport_;
  std::string url_;
  std::string name_;
};

struct ScreenResult {
  // Affective sentences with at least one candidate span.
  std::vector<CandidateSentence> candidates;
  // Sentences an adapter failed on, flagged kUnscreened with the reason.
  std::vector<CandidateSentence> unscreened;
  std::size_t neutral = 0;
  std::size_t without_candidates = 0;
};

// Detectors run on the raw sentence text (spans index it); the sentiment
// screen runs on the preprocessed text. A failed batch call is retried
// item by item so that only the failing items are flagged.
ScreenResult ScreenCandidates(const std::vector<Sentence> &sentences, DetectorAdapter &metaphor,
                              DetectorAdapter &idiom, DetectorAdapter &sentiment,
                              std::size_t batch_size = 64);

}  // namespace ingest
}  // namespace figlang

#endif  // FIGLANG_INGEST_DETECT_H_
