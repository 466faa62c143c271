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

#include "figlang/refdata/reference.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "figlang/prevalence/matcher.h"
#include "figlang/prevalence/normalize.h"
#include "figlang/util/io.h"
#include "figlang/util/random.h"

namespace figlang {
namespace refdata {
namespace {

using figdata::AnnotatedSentence;
using figdata::Category;
using figdata::DmsChoice;
using figdata::Scope;
using figdata::Status;

constexpr std::size_t kSentences = 1661;
constexpr std::size_t kMetaphorSentences = 752;
constexpr std::size_t kSeOnly = 371;
constexpr std::size_t kGeneralOnly = 1179;
constexpr std::size_t kBothScopes = 111;
constexpr std::size_t kSeExpressions = 445;
constexpr std::size_t kGeneralExpressions = 1296;
constexpr std::size_t kAdjudicated = 310;

const std::vector<std::string> kSeModifiers = {
    "spaghetti", "zombie", "ghost",   "toxic",  "golden", "dead",   "hot",    "dirty",  "brittle",
    "leaky",     "rotten", "frozen",  "haunted", "bloated", "tangled", "fragile", "noisy", "orphan",
    "rogue",     "stale",  "sticky",  "shiny",  "smelly", "silent", "heavy"};
const std::vector<std::string> kSeNouns = {"code",  "build",   "branch", "test",  "thread", "pipeline", "patch",
                                           "commit", "merge",  "release", "path", "lock",   "queue",    "cache",
                                           "flag",  "socket", "module", "stack", "heap",   "hook"};
const std::vector<std::string> kVerbs = {"kick",  "bite",  "break", "spill", "hit",   "pull",  "push",  "burn",  "jump",
                                         "cross", "drop",  "miss",  "hold",  "catch", "shake", "turn",  "raise", "move",
                                         "open",  "close", "carry", "throw", "steer", "rock",  "sink",  "bend",  "chase",
                                         "cut",   "fill",  "grab",  "lift",  "paint", "plant", "sweep", "walk",  "climb"};
const std::vector<std::string> kObjects = {
    "bullet", "boat",  "bucket", "ice",   "ball",   "fence",  "bridge", "horn",   "line",   "wall",  "road",  "towel",
    "candle", "storm", "wave",   "ladder", "rope",  "drum",   "nail",   "table",  "clock",  "bell",  "door",  "window",
    "river",  "mountain", "hill", "tree", "leaf",   "stone",  "fire",   "wind",   "cloud",  "moon",  "star",  "anchor"};
const std::vector<std::string> kComponents = {
    "parser",         "scheduler",       "installer",  "auth layer",     "CI job",       "dashboard",
    "exporter",       "plugin loader",   "migration script", "HTTP client", "query planner", "cache layer",
    "release tooling", "config loader", "test harness", "build script",  "log shipper",  "search index"};
const std::vector<std::string> kLiteralPhrases = {
    "make a hard choice", "take a real risk",  "give up on it",       "start over",
    "speed things up",    "stay calm",         "fix it properly",     "wait a bit",
    "accept the cost",    "face the problem",  "finish the work",     "tell the truth"};
const std::vector<std::string> kRepos = {"acme/parser-kit", "acme/flowctl", "orbit/scheduler", "orbit/webui",
                                         "lattice/db",      "lattice/cli",  "harbor/deploy",   "harbor/agent"};

template <typename T>
const T &Pick(Rng &rng, const std::vector<T> &v) {
  return v[rng.Below(v.size())];
}

std::string Pad(std::size_t n, int width) {
  std::string s = std::to_string(n);
  return std::string(width > static_cast<int>(s.size()) ? width - s.size() : 0, '0') + s;
}

struct SeExpr {
  std::string modifier;
  std::string noun;
  std::string surface() const { return modifier + " " + noun; }
};

struct GeneralExpr {
  std::string verb;
  std::string object;
  std::string surface() const { return verb + " the " + object; }
};

// Checks that surfaces stay distinct after lemmatized matching.
template <typename E>
void RequireDistinctKeys(const std::vector<E> &exprs, std::set<std::string> &seen) {
  for (const auto &e : exprs) {
    if (!seen.insert(prevalence::MatchKey(e.surface())).second) {
      throw std::logic_error("reference generator: expression key collision for '" + e.surface() + "'");
    }
  }
}

enum class Kind { kSeOnly, kGeneralOnly, kGeneralPair, kBoth };

struct Plan {
  Kind kind;
  std::size_t se = 0;
  std::size_t general = 0;
  std::size_t general2 = 0;
  Category category = Category::kIdiom;
};

// Appends `text` to `out`, and records its span when `surface` is set.
struct Builder {
  std::string text;
  std::vector<figdata::FigurativeExpression> exprs;
  void Add(const std::string &s) { text += s; }
  void AddExpr(const std::string &surface, Category c, Scope scope) {
    exprs.push_back({surface, {text.size(), text.size() + surface.size()}, c, scope, true});
    text += surface;
  }
};

std::string Replace(std::string text, const std::string &from, const std::string &to) {
  const auto pos = text.find(from);
  if (pos == std::string::npos) throw std::logic_error("reference generator: '" + from + "' not in '" + text + "'");
  return text.replace(pos, from.size(), to);
}

}  // namespace

std::vector<AnnotatedSentence> AnnotatedReference(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SeExpr> se;
  for (const auto &m : kSeModifiers) {
    for (const auto &n : kSeNouns) se.push_back({m, n});
  }
  rng.Shuffle(std::span(se));
  se.resize(kSeExpressions);
  std::vector<GeneralExpr> general;
  for (const auto &v : kVerbs) {
    for (const auto &o : kObjects) general.push_back({v, o});
  }
  rng.Shuffle(std::span(general));
  general.resize(kGeneralExpressions);
  std::set<std::string> keys;
  RequireDistinctKeys(se, keys);
  RequireDistinctKeys(general, keys);

  // Sentence plans: every expression is used, SE ones may repeat.
  const std::size_t general_pairs = kGeneralExpressions - kGeneralOnly - kBothScopes;
  std::vector<Plan> plans;
  for (std::size_t i = 0; i < kSeOnly; ++i) plans.push_back({Kind::kSeOnly});
  for (std::size_t i = 0; i < kBothScopes; ++i) plans.push_back({Kind::kBoth});
  for (std::size_t i = 0; i < kGeneralOnly; ++i) {
    plans.push_back({i < general_pairs ? Kind::kGeneralPair : Kind::kGeneralOnly});
  }
  rng.Shuffle(std::span(plans));

  std::vector<std::size_t> se_slots;
  std::size_t next_general = 0;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    auto &p = plans[i];
    if (p.kind == Kind::kSeOnly || p.kind == Kind::kBoth) se_slots.push_back(i);
    if (p.kind != Kind::kSeOnly) p.general = next_general++;
    if (p.kind == Kind::kGeneralPair) p.general2 = next_general++;
  }
  if (next_general != kGeneralExpressions) throw std::logic_error("reference generator: general slot count");

  // Sentences sharing an SE expression share a category.
  std::vector<std::vector<std::size_t>> groups;
  std::vector<bool> grouped(plans.size(), false);
  for (std::size_t j = 0; j < se_slots.size(); ++j) {
    plans[se_slots[j]].se = j % kSeExpressions;
    if (j >= kSeExpressions) {
      groups.push_back({se_slots[j - kSeExpressions], se_slots[j]});
      grouped[se_slots[j - kSeExpressions]] = grouped[se_slots[j]] = true;
    }
  }
  std::vector<std::size_t> singles;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    if (!grouped[i]) singles.push_back(i);
  }
  rng.Shuffle(std::span(singles));
  std::size_t metaphors = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (g % 2 == 0) {
      for (auto i : groups[g]) plans[i].category = Category::kMetaphor;
      metaphors += groups[g].size();
    }
  }
  for (auto i : singles) {
    if (metaphors == kMetaphorSentences) break;
    plans[i].category = Category::kMetaphor;
    ++metaphors;
  }

  std::vector<std::size_t> adjudicated(plans.size());
  for (std::size_t i = 0; i < adjudicated.size(); ++i) adjudicated[i] = i;
  rng.Shuffle(std::span(adjudicated));
  std::set<std::size_t> adjudicated_set(adjudicated.begin(), adjudicated.begin() + kAdjudicated);

  std::vector<AnnotatedSentence> out;
  out.reserve(kSentences);
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const auto &p = plans[i];
    const auto &comp = Pick(rng, kComponents);
    Builder b;
    std::string ems;
    std::array<std::string, 4> cands;
    const std::size_t variant = rng.Below(4);
    if (p.kind == Kind::kSeOnly) {
      const auto &e = se[p.se];
      static const std::array<std::pair<const char *, const char *>, 4> kTemplates = {{
          {"The ", " in the % keeps breaking the nightly run."},
          {"We finally tracked the ", " down to the %."},
          {"Please do not add another ", " to the %."},
          {"That ", " in the % needs an owner before Friday."},
      }};
      const auto &[pre, post] = kTemplates[variant];
      b.Add(pre);
      b.AddExpr(e.surface(), p.category, Scope::kSeSpecific);
      b.Add(Replace(post, "%", comp));
      ems = Replace(b.text, e.surface(), "badly maintained " + e.noun);
      cands = {"Someone wrote the word " + e.modifier + " next to the " + e.noun + " list in the " + comp + " notes.",
               "The " + comp + " docs describe a " + e.noun + " painted in " + e.modifier + " colours.",
               Replace(b.text, e.surface(), "well tested " + e.noun),
               Replace(b.text, e.surface(), "brand new " + e.noun)};
    } else if (p.kind == Kind::kBoth) {
      const auto &s = se[p.se];
      const auto &g = general[p.general];
      b.Add("The ");
      b.AddExpr(s.surface(), p.category, Scope::kSeSpecific);
      b.Add(" in the " + comp + " forced us to ");
      b.AddExpr(g.surface(), p.category, Scope::kGeneral);
      b.Add(variant % 2 ? " last week." : " before the release.");
      ems = Replace(Replace(b.text, s.surface(), "badly maintained " + s.noun), g.surface(),
                    Pick(rng, kLiteralPhrases));
      cands = {"We saw a " + s.noun + " and had to " + g.verb + " a real " + g.object + " near the office.",
               "The " + comp + " manual has a picture of a " + g.object + " and a " + s.modifier + " " + s.noun + ".",
               Replace(Replace(b.text, s.surface(), "well tested " + s.noun), g.surface(), "celebrate the launch"),
               Replace(Replace(b.text, s.surface(), "brand new " + s.noun), g.surface(), "order lunch")};
    } else {
      const auto &g = general[p.general];
      if (p.kind == Kind::kGeneralPair) {
        const auto &g2 = general[p.general2];
        b.Add("We chose to ");
        b.AddExpr(g.surface(), p.category, Scope::kGeneral);
        b.Add(" and then ");
        b.AddExpr(g2.surface(), p.category, Scope::kGeneral);
        b.Add(" on the " + comp + ".");
        ems = Replace(Replace(b.text, g.surface(), "stop arguing"), g2.surface(), Pick(rng, kLiteralPhrases));
      } else {
        static const std::array<std::pair<const char *, const char *>, 4> kTemplates = {{
            {"We had to ", " on the % rewrite before the freeze."},
            {"I think it is time to ", " and ship the % fix."},
            {"Nobody wanted to ", " when the % failed again."},
            {"Let's ", " and merge the % change today."},
        }};
        const auto &[pre, post] = kTemplates[variant];
        b.Add(pre);
        b.AddExpr(g.surface(), p.category, Scope::kGeneral);
        b.Add(Replace(post, "%", comp));
        ems = Replace(b.text, g.surface(), Pick(rng, kLiteralPhrases));
      }
      cands = {"I watched someone " + g.verb + " the " + g.object + " outside the office this morning.",
               "The " + g.object + " in the " + comp + " team photo is about to fall over.",
               Replace(b.text, g.surface(), "celebrate the launch"), Replace(b.text, g.surface(), "order lunch")};
    }

    AnnotatedSentence s;
    s.id = "fl" + Pad(i + 1, 4);
    s.original = b.text;
    s.expressions = std::move(b.exprs);
    s.ems = ems;
    s.dms_candidates.assign(cands.begin(), cands.end());
    const bool adjudicated_item = adjudicated_set.count(i) > 0;
    s.status = adjudicated_item ? Status::kAdjudicated : Status::kDmsSelected;
    if (adjudicated_item && rng.Below(5) == 0) {
      s.dms_choice = DmsChoice::kNoneCustom;
      s.dms = "The " + comp + " team ordered new chairs for meeting room " + std::to_string(i % 40 + 1) + ".";
    } else {
      const auto k = rng.Below(4);
      s.dms_choice = static_cast<DmsChoice>(k);
      s.dms = cands[k];
    }
    s.provenance = {Pick(rng, kRepos), "c" + Pad(100000 + i * 7, 6), s.id + "-s0"};
    figdata::ValidateItem(s);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<bench::TaskItem> EmotionReference(std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<std::pair<std::string, std::vector<std::string>>> kWords = {
      {"Anger", {"furious", "annoyed", "fed up", "livid", "irritated"}},
      {"Love", {"grateful", "thankful", "in love with this", "fond of this", "touched"}},
      {"Fear", {"worried", "scared", "nervous", "anxious", "afraid"}},
      {"Joy", {"happy", "glad", "delighted", "thrilled", "pleased"}},
      {"Sadness", {"sad", "disappointed", "unhappy", "heartbroken", "down"}},
      {"Surprise", {"surprised", "amazed", "shocked", "astonished", "stunned"}}};
  std::map<std::string, std::size_t> remaining = {{"Anger", 340}, {"Love", 220},    {"Fear", 198},
                                                  {"Joy", 422},   {"Sadness", 274}, {"Surprise", 328}};
  const std::vector<std::pair<std::string, std::string>> kPairs = {
      {"Joy", "Surprise"}, {"Anger", "Sadness"}, {"Fear", "Sadness"}};
  auto word = [&](const std::string &label) {
    for (const auto &[l, ws] : kWords) {
      if (l == label) return Pick(rng, ws);
    }
    throw std::logic_error("unknown emotion " + label);
  };
  std::vector<bench::TaskItem> items;
  for (const auto &[a, b] : kPairs) {
    for (int k = 0; k < 20; ++k) {
      const auto wa = word(a);
      const auto wb = word(b);
      const auto &comp = Pick(rng, kComponents);
      items.push_back({"", "I am " + wa + " and " + wb + " that the " + comp + " change went out today.", {a, b}, ""});
      --remaining[a];
      --remaining[b];
    }
  }
  for (const auto &[label, n] : remaining) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto w = word(label);
      const auto &comp = Pick(rng, kComponents);
      items.push_back({"", "Honestly I am " + w + " about the " + comp + " update.", {label}, ""});
    }
  }
  while (items.size() < 2000) {
    const auto &comp = Pick(rng, kComponents);
    const auto rev = 1000 + rng.Below(9000);
    items.push_back({"", "The " + comp + " was updated in revision " + std::to_string(rev) + ".", {}, ""});
  }
  rng.Shuffle(std::span(items));
  for (std::size_t i = 0; i < items.size(); ++i) items[i].id = "em" + Pad(i + 1, 4);
  return items;
}

std::vector<bench::TaskItem> IncivilityReference(std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<std::string> kCivil = {"Thanks for the review, I will update the % today.",
                                           "Good catch, the % needs a guard here.",
                                           "Could you add a test for the % path?",
                                           "I agree, let's split the % change into two commits."};
  const std::vector<std::string> kUncivil = {"This % patch is garbage, did you even run it?",
                                             "Stop wasting everyone's time with the %.",
                                             "Who wrote this % nonsense? Unbelievable.",
                                             "Read the docs before touching the % again, seriously."};
  const std::vector<std::string> kTechnical = {"The % allocates on every call; see the profile.",
                                               "Rebased the % branch onto main."};
  std::vector<bench::TaskItem> items;
  auto add = [&](const std::vector<std::string> &templates, const std::string &label, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto &tmpl = Pick(rng, templates);
      const auto &comp = Pick(rng, kComponents);
      items.push_back({"", Replace(tmpl, "%", comp), {label}, ""});
    }
  };
  add(kCivil, "Civil", 232);
  add(kUncivil, "Uncivil", 486);
  add(kTechnical, "Technical", 130);
  rng.Shuffle(std::span(items));
  for (std::size_t i = 0; i < items.size(); ++i) items[i].id = "inc" + Pad(i + 1, 4);
  return items;
}

std::vector<bench::TaskItem> PriorityReference(std::uint64_t seed) {
  Rng rng(seed);
  const std::array<std::string, 5> kLabels = {"P1", "P2", "P3", "P4", "P5"};
  const std::array<std::vector<std::string>, 5> kSymptoms = {{
      {"crashes on startup", "corrupts user data", "blocks every release"},
      {"fails for most users", "breaks the main workflow", "leaks memory quickly"},
      {"shows a wrong message", "ignores a setting", "logs a spurious warning"},
      {"has a minor layout glitch", "uses an odd default", "misaligns an icon"},
      {"has a typo in a tooltip", "could use a nicer colour", "has an outdated comment"},
  }};
  const std::array<std::pair<const char *, std::array<std::size_t, 5>>, 2> kSplits = {{
      {"train", {1956, 1845, 5812, 166, 221}},
      {"test", {1921, 1766, 5950, 148, 215}},
  }};
  std::vector<bench::TaskItem> out;
  for (const auto &[split, counts] : kSplits) {
    std::vector<bench::TaskItem> items;
    for (std::size_t c = 0; c < 5; ++c) {
      for (std::size_t k = 0; k < counts[c]; ++k) {
        const auto &comp = Pick(rng, kComponents);
        const auto &symptom = Pick(rng, kSymptoms[c]);
        const auto update = 1 + rng.Below(300);
        items.push_back({"", "The " + comp + " " + symptom + " after update " + std::to_string(update) + ".",
                         {kLabels[c]}, split});
      }
    }
    rng.Shuffle(std::span(items));
    for (auto &item : items) out.push_back(std::move(item));
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = "pr" + Pad(i + 1, 5);
  return out;
}

std::vector<std::string> ReferenceFileNames() {
  return {"annotated.jsonl", "emotion.jsonl", "incivility.jsonl", "priority.jsonl", "lexicon.csv"};
}

void WriteReferenceData(const std::filesystem::path &dir, std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  const auto annotated = AnnotatedReference(seed);
  WriteFileAtomic(dir / "annotated.jsonl", figdata::ToCanonicalJsonl(annotated));
  WriteFileAtomic(dir / "emotion.jsonl", bench::TaskItemsToJsonl(EmotionReference(seed)));
  WriteFileAtomic(dir / "incivility.jsonl", bench::TaskItemsToJsonl(IncivilityReference(seed)));
  WriteFileAtomic(dir / "priority.jsonl", bench::TaskItemsToJsonl(PriorityReference(seed)));
  WriteFileAtomic(dir / "lexicon.csv", prevalence::LexiconToCsv(prevalence::LexiconFromDataset(annotated)));
}

}  // namespace refdata
}  // namespace figlang
