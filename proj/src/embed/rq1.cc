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

#include "figlang/embed/rq1.h"

#include <algorithm>
#include <sstream>

#include <spdlog/spdlog.h>

#include "figlang/figdata/triplets.h"
#include "figlang/ingest/text.h"
#include "figlang/util/io.h"

namespace figlang {
namespace embed {

namespace {

constexpr std::string_view kColumns[] = {"se_specific", "general", "overall"};
constexpr std::string_view kColumnTitles[] = {"SE-specific", "General", "Overall"};

CategoryResult Summarize(std::string_view name, const std::vector<const SimilarityComparison *> &rows) {
  CategoryResult r;
  r.name = std::string(name);
  r.n = rows.size();
  if (rows.empty()) return r;
  stats::PairedSample sample;
  std::size_t wins = 0;
  for (const auto *c : rows) {
    sample.x.push_back(c->sim_ems);
    sample.y.push_back(c->sim_dms);
    if (c->sim_ems > c->sim_dms) ++wins;
  }
  r.percent_ems_wins = 100.0 * static_cast<double>(wins) / static_cast<double>(rows.size());
  try {
    r.p_value = stats::WilcoxonSignedRankOneTailed(sample);
    r.test_defined = true;
  } catch (const stats::StatsError &e) {
    spdlog::warn("rq1: {} test undefined: {}", name, e.what());
  }
  r.p_adjusted = r.p_value;
  const auto effect = stats::CliffsDelta(sample.x, sample.y);
  r.cliffs_delta_abs = std::abs(effect.delta);
  r.magnitude = effect.magnitude;
  return r;
}

void AdjustFamily(const std::vector<CategoryResult *> &family, double q) {
  std::vector<double> ps;
  std::vector<CategoryResult *> defined;
  for (auto *r : family) {
    if (r->test_defined) {
      ps.push_back(r->p_value);
      defined.push_back(r);
    } else {
      r->p_adjusted = 1.0;
      r->reject = false;
    }
  }
  if (ps.empty()) return;
  const auto bh = stats::BenjaminiHochberg(ps, q);
  for (std::size_t i = 0; i < defined.size(); ++i) {
    defined[i]->p_adjusted = bh[i].adjusted_p;
    defined[i]->reject = bh[i].reject;
  }
}

std::string Percent(double v) { return FormatFixed(v, 2) + "%"; }

}  // namespace

std::string_view ToString(ItemCategory c) {
  switch (c) {
    case ItemCategory::kSeSpecific: return "se_specific";
    case ItemCategory::kGeneral: return "general";
    case ItemCategory::kBoth: return "both";
  }
  return "general";
}

const CategoryResult &Rq1Report::Category(std::string_view name) const {
  for (const auto &c : categories) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("rq1 report has no category '" + std::string(name) + "'");
}

Rq1Report SummarizeComparisons(const std::vector<SimilarityComparison> &comparisons,
                               const std::string &model, const Rq1Config &cfg) {
  std::vector<const SimilarityComparison *> se, general, all;
  Rq1Report report;
  report.model = model;
  report.config = cfg;
  for (const auto &c : comparisons) {
    all.push_back(&c);
    if (c.category == ItemCategory::kSeSpecific) se.push_back(&c);
    if (c.category == ItemCategory::kGeneral) general.push_back(&c);
    if (c.category == ItemCategory::kBoth) ++report.n_both;
  }
  report.categories = {Summarize(kColumns[0], se), Summarize(kColumns[1], general), Summarize(kColumns[2], all)};
  AdjustFamily({&report.categories[0], &report.categories[1], &report.categories[2]}, cfg.fdr_q);
  return report;
}

Rq1Result EvaluateRq1(const std::vector<figdata::AnnotatedSentence> &dataset,
                      const EncoderAdapter &encoder, const Rq1Config &cfg) {
  std::vector<const figdata::AnnotatedSentence *> items;
  for (const auto &item : dataset) items.push_back(&item);
  std::sort(items.begin(), items.end(), [](const auto *a, const auto *b) { return a->id < b->id; });

  const ingest::StackTraceFilter filter;
  auto clean = [&](const std::string &text) { return cfg.preprocess ? ingest::PreprocessSeText(text, filter) : text; };

  std::vector<Exclusion> excluded;
  std::vector<std::pair<const figdata::AnnotatedSentence *, ItemCategory>> kept;
  std::vector<Eigen::VectorXd> pooled;
  for (const auto *item : items) {
    if (!item->ems || !item->dms) {
      excluded.push_back({item->id, "missing ems or dms"});
      continue;
    }
    ItemCategory category;
    switch (figdata::ScopeOf(*item)) {
      case figdata::SentenceScope::kSeSpecific: category = ItemCategory::kSeSpecific; break;
      case figdata::SentenceScope::kGeneral: category = ItemCategory::kGeneral; break;
      case figdata::SentenceScope::kBoth: category = ItemCategory::kBoth; break;
      default:
        excluded.push_back({item->id, "no verified expression"});
        continue;
    }
    try {
      std::vector<Eigen::VectorXd> three;
      for (const std::string *text : {&item->original, &*item->ems, &*item->dms}) {
        three.push_back(MeanPool(encoder.Encode(clean(*text))).vector);
      }
      for (auto &v : three) pooled.push_back(std::move(v));
      kept.emplace_back(item, category);
    } catch (const std::exception &e) {
      spdlog::warn("rq1: item {} excluded: {}", item->id, e.what());
      excluded.push_back({item->id, std::string("encoder failure: ") + e.what()});
    }
  }

  Rq1Result result;
  if (!kept.empty()) {
    Eigen::MatrixXd batch(static_cast<Eigen::Index>(pooled.size()), pooled.front().size());
    for (std::size_t i = 0; i < pooled.size(); ++i) batch.row(static_cast<Eigen::Index>(i)) = pooled[i].transpose();
    const Eigen::MatrixXd normalized = SvtNormalize(batch, cfg.svt);
    for (std::size_t k = 0; k < kept.size(); ++k) {
      const auto base = static_cast<Eigen::Index>(3 * k);
      SimilarityComparison c;
      c.item_id = kept[k].first->id;
      c.category = kept[k].second;
      try {
        const Eigen::VectorXd o = normalized.row(base).transpose();
        c.sim_ems = Cosine(o, normalized.row(base + 1).transpose());
        c.sim_dms = Cosine(o, normalized.row(base + 2).transpose());
      } catch (const EmbedError &e) {
        excluded.push_back({c.item_id, std::string("degenerate vector: ") + e.what()});
        continue;
      }
      result.comparisons.push_back(std::move(c));
    }
  }
  result.report = SummarizeComparisons(result.comparisons, encoder.Name(), cfg);
  std::sort(excluded.begin(), excluded.end(), [](const auto &a, const auto &b) { return a.item_id < b.item_id; });
  result.report.excluded = std::move(excluded);
  if (!result.report.excluded.empty()) {
    spdlog::warn("rq1: {} item(s) excluded", result.report.excluded.size());
  }
  return result;
}

void AdjustAcrossReports(std::vector<Rq1Report> &reports, double q) {
  std::vector<CategoryResult *> family;
  for (auto &r : reports) {
    for (auto &c : r.categories) family.push_back(&c);
  }
  AdjustFamily(family, q);
}

std::string FormatPValue(double p) {
  if (p < 0.01) return "p < 0.01";
  return "p = " + FormatFixed(p, 3);
}

std::string ComparisonsCsv(const std::vector<SimilarityComparison> &comparisons) {
  std::string out = "item_id,category,sim_ems,sim_dms\n";
  for (const auto &c : comparisons) {
    out += CsvEscape(c.item_id) + "," + std::string(ToString(c.category)) + "," + FormatFixed(c.sim_ems, 12) +
           "," + FormatFixed(c.sim_dms, 12) + "\n";
  }
  return out;
}

std::string Rq1ReportCsv(const std::vector<Rq1Report> &reports) {
  std::string out =
      "model,category,n,percent_ems_wins,p_value,p_adjusted,reject,test_defined,cliffs_delta_abs,magnitude\n";
  for (const auto &r : reports) {
    for (const auto &c : r.categories) {
      std::ostringstream p, padj;
      p.precision(17);
      padj.precision(17);
      p << c.p_value;
      padj << c.p_adjusted;
      out += CsvEscape(r.model) + "," + c.name + "," + std::to_string(c.n) + "," + FormatFixed(c.percent_ems_wins, 4) +
             "," + p.str() + "," + padj.str() + "," + (c.reject ? "true" : "false") + "," +
             (c.test_defined ? "true" : "false") + "," + FormatFixed(c.cliffs_delta_abs, 6) + "," +
             std::string(stats::MagnitudeName(c.magnitude)) + "\n";
    }
  }
  return out;
}

std::string RenderRq1Table(const std::vector<Rq1Report> &reports) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head = {"Model"};
  for (auto title : kColumnTitles) {
    head.push_back(std::string(title) + " EMS>DMS");
    head.push_back("p-value");
    head.push_back("|delta|");
  }
  rows.push_back(head);
  for (const auto &r : reports) {
    std::vector<std::string> row = {r.model};
    for (auto name : kColumns) {
      const auto &c = r.Category(name);
      row.push_back(Percent(c.percent_ems_wins));
      row.push_back(c.test_defined ? FormatPValue(c.p_adjusted) : "n/a");
      row.push_back(FormatFixed(c.cliffs_delta_abs, 3));
    }
    rows.push_back(row);
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto &row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out += "|";
    for (std::size_t i = 0; i < rows[k].size(); ++i) {
      out += " " + rows[k][i] + std::string(width[i] - rows[k][i].size(), ' ') + " |";
    }
    out += "\n";
    if (k == 0) {
      out += "|";
      for (std::size_t w : width) out += std::string(w + 2, '-') + "|";
      out += "\n";
    }
  }
  return out;
}

std::vector<std::filesystem::path> WriteRq1(const Rq1Result &result, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> files = {
      {"comparisons.csv", ComparisonsCsv(result.comparisons)},
      {"rq1_report.csv", Rq1ReportCsv({result.report})},
      {"rq1_table.txt", RenderRq1Table({result.report})}};
  std::vector<std::filesystem::path> written;
  for (const auto &[name, body] : files) {
    WriteFileAtomic(dir / name, body);
    written.push_back(dir / name);
  }
  if (!result.report.excluded.empty()) {
    std::string body = "item_id,reason\n";
    for (const auto &e : result.report.excluded) body += CsvEscape(e.item_id) + "," + CsvEscape(e.reason) + "\n";
    WriteFileAtomic(dir / "excluded.csv", body);
    written.push_back(dir / "excluded.csv");
  }
  return written;
}

}  // namespace embed
}  // namespace figlang
