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

#include "figlang/bench/tasks.h"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "json.hpp"

#include "figlang/util/io.h"
#include "figlang/util/random.h"

namespace figlang {
namespace bench {

namespace {

[[noreturn]] void Fail(std::size_t line, const std::string &msg) {
  throw TaskDataError(line ? "line " + std::to_string(line) + ": " + msg : msg);
}

void CheckLabels(const TaskDataset &d, std::size_t index, bool exactly_one) {
  const auto &item = d.items[index];
  for (const auto &l : item.labels) {
    if (std::find(d.label_space.begin(), d.label_space.end(), l) == d.label_space.end()) {
      Fail(0, "item '" + item.id + "': unknown label '" + l + "' for " + std::string(ToString(d.task)));
    }
  }
  if (exactly_one && item.labels.size() != 1) Fail(0, "item '" + item.id + "': expected exactly one label");
}

void LogCounts(const TaskDataset &d) {
  std::string summary;
  for (const auto &[label, n] : ClassCounts(d)) summary += " " + label + "=" + std::to_string(n);
  spdlog::info("{}: {} items;{}", ToString(d.task), d.items.size(), summary);
}

}  // namespace

std::string_view ToString(TaskKind k) {
  switch (k) {
    case TaskKind::kEmotion: return "emotion";
    case TaskKind::kIncivility: return "incivility";
    case TaskKind::kPriority: return "priority";
  }
  return "emotion";
}

TaskKind ParseTaskKind(std::string_view s) {
  if (s == "emotion") return TaskKind::kEmotion;
  if (s == "incivility") return TaskKind::kIncivility;
  if (s == "priority") return TaskKind::kPriority;
  throw std::invalid_argument("unknown task '" + std::string(s) + "'");
}

std::vector<std::string> LabelSpace(TaskKind k) {
  switch (k) {
    case TaskKind::kEmotion: return {"Anger", "Love", "Fear", "Joy", "Sadness", "Surprise"};
    case TaskKind::kIncivility: return {"Civil", "Uncivil"};
    case TaskKind::kPriority: return {"P1", "P2", "P3", "P4", "P5"};
  }
  return {};
}

std::map<std::string, std::size_t> ClassCounts(const TaskDataset &d) {
  std::map<std::string, std::size_t> counts;
  for (const auto &l : d.label_space) counts[l] = 0;
  for (const auto &item : d.items) {
    if (item.labels.empty()) ++counts["neutral"];
    for (const auto &l : item.labels) ++counts[l];
  }
  return counts;
}

std::vector<TaskItem> ParseTaskJsonl(std::string_view text) {
  std::vector<TaskItem> items;
  std::size_t line_no = 0;
  for (const auto &line : SplitLines(text)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &e) {
      Fail(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) Fail(line_no, "record is not an object");
    TaskItem item;
    try {
      item.id = j.at("id").is_string() ? j.at("id").get<std::string>() : j.at("id").dump();
      item.text = j.at("text").get<std::string>();
      if (j.contains("labels")) {
        const auto &l = j.at("labels");
        if (l.is_string()) {
          if (!l.get<std::string>().empty()) item.labels.insert(l.get<std::string>());
        } else {
          for (const auto &x : l) item.labels.insert(x.get<std::string>());
        }
      } else if (j.contains("label")) {
        item.labels.insert(j.at("label").get<std::string>());
      } else {
        Fail(line_no, "missing 'labels'");
      }
      if (j.contains("split")) item.split = j.at("split").get<std::string>();
    } catch (const nlohmann::json::exception &e) {
      Fail(line_no, std::string("bad field: ") + e.what());
    }
    items.push_back(std::move(item));
  }
  if (items.empty()) Fail(0, "no records");
  return items;
}

std::vector<TaskItem> ParseTaskCsv(std::string_view text) {
  const auto rows = ParseCsv(text);
  if (rows.size() < 2) Fail(0, "no records");
  const auto &header = rows[0];
  auto col = [&](std::string_view name) -> long {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : it - header.begin();
  };
  const long id = col("id"), txt = col("text"), labels = col("labels"), split = col("split");
  if (id < 0 || txt < 0 || labels < 0) Fail(1, "header needs id,text,labels");
  std::vector<TaskItem> items;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto &row = rows[r];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != header.size()) Fail(r + 1, "expected " + std::to_string(header.size()) + " fields");
    TaskItem item;
    item.id = row[static_cast<std::size_t>(id)];
    item.text = row[static_cast<std::size_t>(txt)];
    std::string_view rest = row[static_cast<std::size_t>(labels)];
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      const std::string label = Trim(rest.substr(0, semi));
      if (!label.empty()) item.labels.insert(label);
      rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
    }
    if (split >= 0) item.split = row[static_cast<std::size_t>(split)];
    items.push_back(std::move(item));
  }
  if (items.empty()) Fail(0, "no records");
  return items;
}

std::vector<TaskItem> ReadTaskItems(const std::filesystem::path &path) {
  const std::string text = ReadFile(path);
  try {
    return path.extension() == ".csv" ? ParseTaskCsv(text) : ParseTaskJsonl(text);
  } catch (const TaskDataError &e) {
    throw TaskDataError(path.string() + ": " + e.what());
  }
}

TaskDataset MakeEmotionDataset(std::vector<TaskItem> items) {
  TaskDataset d{TaskKind::kEmotion, std::move(items), LabelSpace(TaskKind::kEmotion)};
  for (std::size_t i = 0; i < d.items.size(); ++i) CheckLabels(d, i, false);
  LogCounts(d);
  return d;
}

TaskDataset LoadEmotionDataset(const std::filesystem::path &path) {
  return MakeEmotionDataset(ReadTaskItems(path));
}

TaskDataset MakeIncivilityDataset(std::vector<TaskItem> items) {
  TaskDataset d{TaskKind::kIncivility, {}, LabelSpace(TaskKind::kIncivility)};
  std::size_t technical = 0;
  for (auto &item : items) {
    if (item.labels.size() != 1) Fail(0, "item '" + item.id + "': expected exactly one label");
    if (*item.labels.begin() == "Technical") {
      ++technical;
      continue;
    }
    d.items.push_back(std::move(item));
    CheckLabels(d, d.items.size() - 1, true);
  }
  if (d.items.empty()) spdlog::warn("incivility: every record was Technical; dataset is empty");
  spdlog::info("incivility: dropped {} Technical record(s)", technical);
  LogCounts(d);
  return d;
}

TaskDataset LoadIncivilityDataset(const std::filesystem::path &path) {
  return MakeIncivilityDataset(ReadTaskItems(path));
}

TaskDataset MakePriorityDataset(std::vector<TaskItem> items, double sample_fraction, std::uint64_t seed) {
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0)) {
    throw std::invalid_argument("priority: sample_fraction must be in (0, 1]");
  }
  TaskDataset d{TaskKind::kPriority, {}, LabelSpace(TaskKind::kPriority)};
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto &item = items[i];
    if (item.split != "train" && item.split != "test") {
      Fail(0, "item '" + item.id + "': missing or unknown split tag '" + item.split + "'");
    }
    if (item.labels.size() != 1) Fail(0, "item '" + item.id + "': expected exactly one label");
    strata[{item.split, *item.labels.begin()}].push_back(i);
  }
  std::vector<bool> keep(items.size(), sample_fraction == 1.0);
  if (sample_fraction < 1.0) {
    Rng rng(seed);
    for (auto &[key, idx] : strata) {
      rng.Shuffle(std::span(idx));
      const auto take = static_cast<std::size_t>(std::llround(sample_fraction * static_cast<double>(idx.size())));
      for (std::size_t k = 0; k < take; ++k) keep[idx[k]] = true;
    }
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!keep[i]) continue;
    d.items.push_back(std::move(items[i]));
    CheckLabels(d, d.items.size() - 1, true);
  }
  LogCounts(d);
  return d;
}

TaskDataset LoadPriorityDataset(const std::filesystem::path &path, double sample_fraction, std::uint64_t seed) {
  return MakePriorityDataset(ReadTaskItems(path), sample_fraction, seed);
}

TaskDataset LoadTaskDataset(TaskKind kind, const std::filesystem::path &path, double sample_fraction,
                            std::uint64_t seed) {
  switch (kind) {
    case TaskKind::kEmotion: return LoadEmotionDataset(path);
    case TaskKind::kIncivility: return LoadIncivilityDataset(path);
    case TaskKind::kPriority: return LoadPriorityDataset(path, sample_fraction, seed);
  }
  throw std::invalid_argument("unknown task");
}

std::string TaskItemsToJsonl(const std::vector<TaskItem> &items) {
  std::string out;
  for (const auto &item : items) {
    nlohmann::ordered_json j = {{"id", item.id}, {"text", item.text}, {"labels", item.labels}};
    if (!item.split.empty()) j["split"] = item.split;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace bench
}  // namespace figlang
