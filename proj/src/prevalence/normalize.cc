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

#include "figlang/prevalence/normalize.h"

#include <array>
#include <fstream>
#include <utility>

#include "figlang/util/io.h"

namespace figlang {
namespace prevalence {

namespace {

const std::map<std::string, std::string, std::less<>> &Irregulars() {
  static const auto *table = new std::map<std::string, std::string, std::less<>>{
      {"am", "be"},          {"are", "be"},         {"is", "be"},
      {"was", "be"},         {"were", "be"},        {"been", "be"},
      {"being", "be"},       {"has", "have"},       {"had", "have"},
      {"having", "have"},    {"does", "do"},        {"did", "do"},
      {"done", "do"},        {"goes", "go"},        {"went", "go"},
      {"gone", "go"},        {"found", "find"},     {"broke", "break"},
      {"broken", "break"},   {"made", "make"},      {"making", "make"},
      {"ran", "run"},        {"wrote", "write"},    {"written", "write"},
      {"writing", "write"},  {"took", "take"},      {"taken", "take"},
      {"taking", "take"},    {"got", "get"},        {"gotten", "get"},
      {"gave", "give"},      {"given", "give"},     {"giving", "give"},
      {"kept", "keep"},      {"left", "leave"},     {"lost", "lose"},
      {"thought", "think"},  {"brought", "bring"},  {"built", "build"},
      {"caught", "catch"},   {"came", "come"},      {"coming", "come"},
      {"knew", "know"},      {"known", "know"},     {"said", "say"},
      {"saw", "see"},        {"seen", "see"},       {"sent", "send"},
      {"shot", "shoot"},     {"spent", "spend"},    {"stood", "stand"},
      {"told", "tell"},      {"understood", "understand"},
      {"held", "hold"},      {"fell", "fall"},      {"fallen", "fall"},
      {"felt", "feel"},      {"fed", "feed"},       {"threw", "throw"},
      {"thrown", "throw"},   {"bit", "bite"},       {"bitten", "bite"},
      {"ate", "eat"},        {"eaten", "eat"},      {"drove", "drive"},
      {"driven", "drive"},   {"rode", "ride"},      {"ridden", "ride"},
      {"chose", "choose"},   {"chosen", "choose"},  {"froze", "freeze"},
      {"frozen", "freeze"},  {"hid", "hide"},       {"hidden", "hide"},
      {"blew", "blow"},      {"blown", "blow"},     {"grew", "grow"},
      {"grown", "grow"},     {"flew", "fly"},       {"flown", "fly"},
      {"spun", "spin"},      {"stuck", "stick"},    {"struck", "strike"},
      {"swept", "sweep"},    {"slept", "sleep"},    {"meant", "mean"},
      {"met", "meet"},       {"paid", "pay"},       {"laid", "lay"},
      {"led", "lead"},       {"dug", "dig"},        {"hung", "hang"},
      {"children", "child"}, {"men", "man"},        {"women", "woman"},
      {"feet", "foot"},      {"teeth", "tooth"},    {"mice", "mouse"},
      {"geese", "goose"},    {"people", "person"},  {"indices", "index"},
      {"better", "good"},    {"best", "good"},      {"worse", "bad"},
      {"worst", "bad"},
  };
  return *table;
}

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Restores the final letter removed by -ed/-ing stripping.
std::string RepairStem(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !IsVowel(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
    return stem;
  }
  static constexpr std::array<std::string_view, 16> kAddE = {
      "at", "bl", "iz", "us", "uc", "ak", "ok", "ik", "ov", "iv", "as", "os", "rg", "dg", "lv", "rv"};
  for (auto suffix : kAddE) {
    if (EndsWith(stem, suffix)) return stem + "e";
  }
  return stem;
}

bool HasVowel(std::string_view s) {
  for (char c : s) {
    if (IsVowel(c) || c == 'y') return true;
  }
  return false;
}

bool IsLetterByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

}  // namespace

std::string RuleLemmatizer::Lemma(std::string_view word) const {
  std::string w(word);
  if (const auto it = Irregulars().find(w); it != Irregulars().end()) return it->second;
  if (w.size() <= 3) return w;
  if (EndsWith(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "sses")) return w.substr(0, w.size() - 2);
  if (EndsWith(w, "xes") || EndsWith(w, "ches") || EndsWith(w, "shes") || EndsWith(w, "zzes")) {
    return w.substr(0, w.size() - 2);
  }
  if (EndsWith(w, "s") && !EndsWith(w, "ss") && !EndsWith(w, "us") && !EndsWith(w, "is")) {
    return w.substr(0, w.size() - 1);
  }
  if (EndsWith(w, "ied") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "eed")) return w;
  if (EndsWith(w, "ed") && w.size() > 4) {
    const std::string stem = w.substr(0, w.size() - 2);
    if (HasVowel(stem)) return RepairStem(stem);
  }
  if (EndsWith(w, "ing") && w.size() > 5) {
    const std::string stem = w.substr(0, w.size() - 3);
    if (HasVowel(stem)) return RepairStem(stem);
  }
  return w;
}

TableLemmatizer::TableLemmatizer(std::map<std::string, std::string, std::less<>> table,
                                 std::shared_ptr<const Lemmatizer> fallback)
    : table_(std::move(table)), fallback_(std::move(fallback)) {}

TableLemmatizer TableLemmatizer::FromTsv(const std::filesystem::path &path,
                                         std::shared_ptr<const Lemmatizer> fallback) {
  std::map<std::string, std::string, std::less<>> table;
  std::size_t line_no = 0;
  for (const auto &line : ReadLines(path)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected form<TAB>lemma");
    }
    table[ToLower(line.substr(0, tab))] = ToLower(Trim(line.substr(tab + 1)));
  }
  return TableLemmatizer(std::move(table), std::move(fallback));
}

std::string TableLemmatizer::Lemma(std::string_view word) const {
  if (const auto it = table_.find(word); it != table_.end()) return it->second;
  return fallback_ ? fallback_->Lemma(word) : std::string(word);
}

const Lemmatizer &DefaultLemmatizer() {
  static const RuleLemmatizer lemmatizer;
  return lemmatizer;
}

std::vector<LemmaToken> NormalizeWithOffsets(std::string_view text, const Lemmatizer &lemmatizer) {
  std::vector<LemmaToken> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!IsLetterByte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    std::string word;
    while (i < text.size()) {
      const auto c = static_cast<unsigned char>(text[i]);
      if (IsLetterByte(c)) {
        word += static_cast<char>((c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c);
        ++i;
      } else if (c == '\'' && i + 1 < text.size() &&
                 IsLetterByte(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
      } else {
        break;
      }
    }
    out.push_back({lemmatizer.Lemma(word), start, i});
  }
  return out;
}

std::vector<std::string> NormalizeForMatching(std::string_view text, const Lemmatizer &lemmatizer) {
  std::vector<std::string> out;
  for (auto &t : NormalizeWithOffsets(text, lemmatizer)) out.push_back(std::move(t.lemma));
  return out;
}

std::string MatchKey(std::string_view text, const Lemmatizer &lemmatizer) {
  std::string key;
  for (const auto &lemma : NormalizeForMatching(text, lemmatizer)) {
    if (!key.empty()) key += ' ';
    key += lemma;
  }
  return key;
}

}  // namespace prevalence
}  // namespace figlang
