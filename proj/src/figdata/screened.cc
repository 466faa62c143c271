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

#include "figlang/figdata/screened.h"

#include <algorithm>

namespace figlang {
namespace figdata {

std::vector<AnnotatedSentence> ToAnnotationItems(const std::vector<ingest::CandidateSentence> &candidates) {
  std::vector<AnnotatedSentence> out;
  for (const auto &c : candidates) {
    if (c.affect_screen != ingest::AffectScreen::kAffective) continue;
    AnnotatedSentence item;
    item.id = c.sentence.sentence_id;
    item.original = c.sentence.text;
    item.provenance = {c.sentence.source_comment.repo_slug, c.sentence.source_comment.comment_id,
                       c.sentence.sentence_id};
    auto add = [&](const std::vector<ingest::CandidateSpan> &spans, Category category) {
      for (const auto &s : spans) {
        const Span span{s.start, s.end};
        const bool seen = std::any_of(item.expressions.begin(), item.expressions.end(),
                                      [&](const FigurativeExpression &e) { return e.span == span; });
        if (!seen) item.expressions.push_back({s.surface, span, category, Scope::kGeneral, false});
      }
    };
    add(c.metaphor_candidates, Category::kMetaphor);
    add(c.idiom_candidates, Category::kIdiom);
    if (item.expressions.empty()) continue;
    std::stable_sort(item.expressions.begin(), item.expressions.end(),
                     [](const FigurativeExpression &a, const FigurativeExpression &b) {
                       return a.span.start != b.span.start ? a.span.start < b.span.start : a.span.end < b.span.end;
                     });
    ValidateItem(item);
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace figdata
}  // namespace figlang
