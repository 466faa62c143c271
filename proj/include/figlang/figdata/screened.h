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

#ifndef FIGLANG_FIGDATA_SCREENED_H_
#define FIGLANG_FIGDATA_SCREENED_H_

#include <vector>

#include "figlang/figdata/dataset.h"
#include "figlang/ingest/types.h"

namespace figlang {
namespace figdata {

// Screened annotation items from screening output: one item per affective
// candidate sentence, id = sentence id, with unverified metaphor and idiom
// candidates in span order. A span flagged by both detectors is kept once,
// as a metaphor. Unscreened and neutral sentences are skipped.
std::vector<AnnotatedSentence> ToAnnotationItems(const std::vector<ingest::CandidateSentence> &candidates);

}  // namespace figdata
}  // namespace figlang

#endif  // FIGLANG_FIGDATA_SCREENED_H_
