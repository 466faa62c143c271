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

#ifndef FIGLANG_BENCH_TASKS_H_
#define FIGLANG_BENCH_TASKS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "figlang/stats/stats.h"

namespace figlang {
namespace bench {

// Malformed task file; the message carries the 1-based line when known.
class TaskDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TaskKind { kEmotion, kIncivility, kPriority };

std::string_view ToString(TaskKind k);
TaskKind ParseTaskKind(std::string_view s);

struct TaskItem {
  std::string id;
  std::string text;
  // Empty for neutral emotion items.
  stats::LabelSet labels;
  // "train", "test" or empty.
  std::string split;
};

struct TaskDataset {
  TaskKind task = TaskKind::kEmotion;
  std::vector<TaskItem> items;
  std::vector<std::string> label_space;

  stats::MetricsMode mode() const {
    return task == TaskKind::kEmotion ? stats::MetricsMode::kMultiLabel : stats::MetricsMode::kMultiClass;
  }
};

std::vector<std::string> LabelSpace(TaskKind k);

// Items per label in label-space order; "neutral" counts empty sets.
std::map<std::string, std::size_t> ClassCounts(const TaskDataset &d);

// Raw records from JSONL ({"id", "text", "labels": [..] | "label": "..",
// "split"}) or, for a .csv path, a header with id,text,labels[,split]
// where labels are separated by ';'. Throws TaskDataError on an empty
// file or a malformed record.
std::vector<TaskItem> ReadTaskItems(const std::filesystem::path &path);
std::vector<TaskItem> ParseTaskJsonl(std::string_view text);
std::vector<TaskItem> ParseTaskCsv(std::string_view text);

// Six-label multilabel set; unknown labels are schema errors.
TaskDataset MakeEmotionDataset(std::vector<TaskItem> items);
TaskDataset LoadEmotionDataset(const std::filesystem::path &path);

// Keeps Civil and Uncivil comments, drops Technical (warns when nothing
// is left). Each record needs exactly one label.
TaskDataset MakeIncivilityDataset(std::vector<TaskItem> items);
TaskDataset LoadIncivilityDataset(const std::filesystem::path &path);

// Every record needs a train/test split tag and one of P1..P5. Each
// (split, class) stratum keeps round(fraction * size) items chosen by a
// seeded shuffle; kept items stay in file order.
TaskDataset MakePriorityDataset(std::vector<TaskItem> items, double sample_fraction, std::uint64_t seed);
TaskDataset LoadPriorityDataset(const std::filesystem::path &path, double sample_fraction = 0.25,
                                std::uint64_t seed = 0);

TaskDataset LoadTaskDataset(TaskKind kind, const std::filesystem::path &path, double sample_fraction = 0.25,
                            std::uint64_t seed = 0);

std::string TaskItemsToJsonl(const std::vector<TaskItem> &items);

}  // namespace bench
}  // namespace figlang

#endif  // FIGLANG_BENCH_TASKS_H_
