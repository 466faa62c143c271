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

#ifndef FIGLANG_REFDATA_REFERENCE_H_
#define FIGLANG_REFDATA_REFERENCE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "figlang/bench/tasks.h"
#include "figlang/figdata/dataset.h"

namespace figlang {
namespace refdata {

// Synthetic stand-ins for the published data, built to match the
// published aggregate counts exactly. Every generator is deterministic
// in `seed`.

// 1661 annotated sentences (752 metaphor, 909 idiom; 371 SE-only, 1179
// general-only, 111 both-scope; 310 adjudicated, the rest dms_selected)
// holding 1741 unique expressions, 445 SE-specific and 1296 general.
std::vector<figdata::AnnotatedSentence> AnnotatedReference(std::uint64_t seed = 2024);

// 2000 texts; Anger/Love/Fear/Joy/Sadness/Surprise appear on
// 340/220/198/422/274/328 of them, the rest are neutral.
std::vector<bench::TaskItem> EmotionReference(std::uint64_t seed = 2024);

// 232 Civil, 486 Uncivil and a block of Technical comments.
std::vector<bench::TaskItem> IncivilityReference(std::uint64_t seed = 2024);

// 10000 train and 10000 test bug reports with P1..P5 shares
// 1956/1845/5812/166/221 and 1921/1766/5950/148/215.
std::vector<bench::TaskItem> PriorityReference(std::uint64_t seed = 2024);

// File names written by WriteReferenceData, in write order.
std::vector<std::string> ReferenceFileNames();

// Writes every reference file into `dir` (created when missing).
void WriteReferenceData(const std::filesystem::path &dir, std::uint64_t seed = 2024);

}  // namespace refdata
}  // namespace figlang

#endif  // FIGLANG_REFDATA_REFERENCE_H_
