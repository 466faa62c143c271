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

#ifndef FIGLANG_FIGDATA_DATASET_JSON_H_
#define FIGLANG_FIGDATA_DATASET_JSON_H_

#include "json.hpp"

#include "figlang/figdata/dataset.h"

namespace figlang {
namespace figdata {

nlohmann::json ToJson(const AnnotatedSentence &item);
// Throws SchemaError with the offending field; does not check invariants.
AnnotatedSentence ItemFromJson(const nlohmann::json &j, std::size_t line = 0);

}  // namespace figdata
}  // namespace figlang

#endif  // FIGLANG_FIGDATA_DATASET_JSON_H_
