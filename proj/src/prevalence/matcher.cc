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

#include "figlang/prevalence/matcher.h"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "figlang/util/io.h"

namespace figlang {
namespace prevalence {

namespace {

std::string JoinLemmas(const std::vector<std::string> &lemmas) {
  std::string key;
  for (const auto &l : lemmas) {
    if (!key.empty()) key += ' ';
    key += l;
  }
  return key;
}

}  // namespace

ExpressionLexicon ParseLexiconCsv(std::string_view text, const Lemmatizer &lemmatizer) {
  const auto rows = ParseCsv(text);
  if (rows.empty()) throw IoError("lexicon: missing header");
  const auto &header = rows[0];
  auto column = [&](const std::string &name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw IoError("lexicon: missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t id_col = column("expression_id");
  const std::size_t surface_col = column("surface");
  const std::size_t scope_col = column("scope");
  ExpressionLexicon lexicon;
  std::set<std::string> ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto &row = rows[r];
    if (row.size() == 1 && Trim(row[0]).empty()) continue;
    const std::string where = "lexicon row " + std::to_string(r + 1) + ": ";
    if (row.size() != header.size()) throw IoError(where + "wrong number of fields");
    LexiconEntry e;
    e.expression_id = row[id_col];
    e.surface = row[surface_col];
    try {
      e.scope = figdata::ParseScope(row[scope_col]);
    } catch (const std::invalid_argument &err) {
      throw IoError(where + err.what());
    }
    e.lemmas = NormalizeForMatching(e.surface, lemmatizer);
    if (e.lemmas.empty()) throw IoError(where + "surface '" + e.surface + "' has no words");
    if (!ids.insert(e.expression_id).second) throw IoError(where + "duplicate id '" + e.expression_id + "'");
    lexicon.entries.push_back(std::move(e));
  }
  return lexicon;
}

ExpressionLexicon LoadLexiconCsv(const std::filesystem::path &path, const Lemmatizer &lemmatizer) {
  return ParseLexiconCsv(ReadFile(path), lemmatizer);
}

std::string LexiconToCsv(const ExpressionLexicon &lexicon) {
  std::string out = "expression_id,surface,scope\n";
  for (const auto &e : lexicon.entries) {
    out += CsvEscape(e.expression_id) + "," + CsvEscape(e.surface) + "," +
           std::string(figdata::ToString(e.scope)) + "\n";
  }
  return out;
}

ExpressionLexicon LexiconFromDataset(const std::vector<figdata::AnnotatedSentence> &dataset,
                                     const Lemmatizer &lemmatizer) {
  std::vector<const figdata::AnnotatedSentence *> order;
  for (const auto &item : dataset) order.push_back(&item);
  std::stable_sort(order.begin(), order.end(), [](const auto *a, const auto *b) { return a->id < b->id; });
  std::map<std::string, LexiconEntry> unique;
  for (const auto *item : order) {
    for (const auto *e : figdata::VerifiedExpressions(*item)) {
      auto lemmas = NormalizeForMatching(e->surface, lemmatizer);
      if (lemmas.empty()) continue;
      const std::string key = JoinLemmas(lemmas);
      unique.emplace(key, LexiconEntry{"", e->surface, std::move(lemmas), e->scope});
    }
  }
  ExpressionLexicon lexicon;
  char id[32];
  for (auto &[key, entry] : unique) {
    std::snprintf(id, sizeof(id), "fx%04zu", lexicon.entries.size() + 1);
    entry.expression_id = id;
    lexicon.entries.push_back(std::move(entry));
  }
  return lexicon;
}

Matcher::Matcher(const ExpressionLexicon &lexicon, const Lemmatizer &lemmatizer)
    : lemmatizer_(lemmatizer) {
  if (lexicon.entries.empty()) throw std::invalid_argument("matcher: empty lexicon");
  nodes_.emplace_back();
  std::map<std::string, std::string> seen;
  for (const auto &entry : lexicon.entries) {
    if (entry.lemmas.empty()) throw std::invalid_argument("matcher: entry " + entry.expression_id + " has no lemmas");
    const std::string key = JoinLemmas(entry.lemmas);
    if (const auto it = seen.find(key); it != seen.end()) {
      ++collapsed_;
      spdlog::warn("matcher: {} repeats the lemma sequence of {} ('{}'); collapsed", entry.expression_id,
                   it->second, key);
      continue;
    }
    seen.emplace(key, entry.expression_id);
    int state = 0;
    for (const auto &lemma : entry.lemmas) {
      const int symbol = symbols_.emplace(lemma, static_cast<int>(symbols_.size())).first->second;
      const auto it = nodes_[state].next.find(symbol);
      if (it != nodes_[state].next.end()) {
        state = it->second;
        continue;
      }
      const int child = static_cast<int>(nodes_.size());
      const int depth = nodes_[state].depth + 1;
      nodes_[state].next.emplace(symbol, child);
      nodes_.emplace_back();
      nodes_.back().depth = depth;
      state = child;
    }
    nodes_[state].pattern = static_cast<int>(entries_.size());
    entries_.push_back(entry);
  }

  std::deque<int> queue;
  for (const auto &[symbol, child] : nodes_[0].next) queue.push_back(child);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto &[symbol, v] : nodes_[u].next) {
      int f = nodes_[u].fail;
      while (f != 0 && !nodes_[f].next.count(symbol)) f = nodes_[f].fail;
      const auto it = nodes_[f].next.find(symbol);
      nodes_[v].fail = (it != nodes_[f].next.end() && it->second != v) ? it->second : 0;
      const Node &fail = nodes_[nodes_[v].fail];
      nodes_[v].output = fail.pattern >= 0 ? nodes_[v].fail : fail.output;
      queue.push_back(v);
    }
  }
}

int Matcher::Step(int state, int symbol) const {
  if (symbol < 0) return 0;
  while (true) {
    const auto it = nodes_[state].next.find(symbol);
    if (it != nodes_[state].next.end()) return it->second;
    if (state == 0) return 0;
    state = nodes_[state].fail;
  }
}

std::vector<Match> Matcher::FindInLemmas(const std::vector<std::string> &lemmas) const {
  std::vector<Match> best(lemmas.size());
  std::vector<bool> has(lemmas.size(), false);
  int state = 0;
  for (std::size_t i = 0; i < lemmas.size(); ++i) {
    const auto sym = symbols_.find(lemmas[i]);
    state = Step(state, sym == symbols_.end() ? -1 : sym->second);
    for (int node = nodes_[state].pattern >= 0 ? state : nodes_[state].output; node >= 0 && node != 0;
         node = nodes_[node].output) {
      const auto length = static_cast<std::size_t>(nodes_[node].depth);
      const std::size_t start = i + 1 - length;
      if (!has[start] || best[start].token_end - best[start].token_begin < length) {
        best[start] = {static_cast<std::size_t>(nodes_[node].pattern), start, i + 1, 0, 0};
        has[start] = true;
      }
    }
  }
  std::vector<Match> out;
  std::size_t max_end = 0;
  for (std::size_t start = 0; start < lemmas.size(); ++start) {
    if (!has[start]) continue;
    if (best[start].token_end <= max_end) continue;
    max_end = best[start].token_end;
    out.push_back(best[start]);
  }
  return out;
}

std::vector<Match> Matcher::Find(std::string_view sentence) const {
  const auto tokens = NormalizeWithOffsets(sentence, lemmatizer_);
  std::vector<std::string> lemmas;
  lemmas.reserve(tokens.size());
  for (const auto &t : tokens) lemmas.push_back(t.lemma);
  auto matches = FindInLemmas(lemmas);
  for (auto &m : matches) {
    m.byte_start = tokens[m.token_begin].start;
    m.byte_end = tokens[m.token_end - 1].end;
  }
  return matches;
}

}  // namespace prevalence
}  // namespace figlang
