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

#ifndef FIGLANG_TESTS_ANNOTATION_FIXTURE_H_
#define FIGLANG_TESTS_ANNOTATION_FIXTURE_H_

#include <string>
#include <vector>

#include "figlang/figdata/dataset.h"
#include "figlang/figdata/llm.h"

namespace figlang::testing {

// Screened items holding three unverified candidates each.
inline std::vector<figdata::AnnotatedSentence> ScreenedItems(std::size_t count) {
  std::vector<figdata::AnnotatedSentence> out;
  for (std::size_t i = 0; i < count; ++i) {
    figdata::AnnotatedSentence s;
    s.id = "item" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    s.original = "We found a nasty bug near the code smell, piece of cake " + std::to_string(i);
    auto add = [&](const std::string &surface) {
      const auto start = s.original.find(surface);
      s.expressions.push_back({surface, {start, start + surface.size()}, figdata::Category::kMetaphor,
                               figdata::Scope::kGeneral, false});
    };
    add("nasty bug");
    add("code smell");
    add("piece of cake");
    out.push_back(std::move(s));
  }
  return out;
}

// Answers every prompt with two numbered, never-repeating sentences.
class CountingLlm : public figdata::LlmClient {
 public:
  std::string Complete(const std::string &) override {
    ++n_;
    return "1. Literal variant " + std::to_string(n_) + "a.\n2. Literal variant " + std::to_string(n_) + "b.";
  }

 private:
  int n_ = 0;
};

// Fails every call.
class DownLlm : public figdata::LlmClient {
 public:
  std::string Complete(const std::string &) override { throw figdata::LlmError("service unavailable"); }
};

}  // namespace figlang::testing

#endif  // FIGLANG_TESTS_ANNOTATION_FIXTURE_H_
