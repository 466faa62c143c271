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

#include <atomic>
#include <csignal>
#include <chrono>
#include <memory>
#include <thread>

#include "cli/dispatch.h"
#include "cli/manifest.h"
#include "figlang/annotate/server.h"
#include "figlang/annotate/store.h"
#include "figlang/bench/compare.h"
#include "figlang/bench/tasks.h"
#include "figlang/contrastive/contrastive.h"
#include "figlang/embed/encoder.h"
#include "figlang/embed/rq1.h"
#include "figlang/figdata/dataset.h"
#include "figlang/figdata/llm.h"
#include "figlang/figdata/screened.h"
#include "figlang/figdata/triplets.h"
#include "figlang/ingest/detect.h"
#include "figlang/ingest/github.h"
#include "figlang/ingest/text.h"
#include "figlang/prevalence/matcher.h"
#include "figlang/prevalence/scan.h"
#include "figlang/util/http.h"
#include "figlang/util/io.h"
#include "json.hpp"

namespace figlang::cli {
namespace {

namespace fs = std::filesystem;
using OR = OptionRole;

OptionSpec In(std::string key, std::string help, bool required = true) {
  return {std::move(key), "", std::move(help), OR::kInput, required};
}
OptionSpec Out(std::string key, std::string help) { return {std::move(key), "", std::move(help), OR::kOutput, true}; }
OptionSpec Val(std::string key, std::string def, std::string help) {
  return {std::move(key), std::move(def), std::move(help), OR::kValue, false};
}

std::vector<OptionSpec> With(std::vector<OptionSpec> a, const std::vector<OptionSpec> &b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<OptionSpec> EncoderSpecs(const std::string &def) {
  return {Val("encoder", def,
              "toy|bow (bag of words fitted on the input), toy-linear (hashed trainable table), "
              "model:<path> (saved toy-linear), http:<url> or an http(s) URL"),
          Val("encoder_buckets", "4096", "toy-linear hash buckets"),
          Val("encoder_dim", "32", "toy-linear embedding width"),
          Val("encoder_seed", "1", "toy-linear initialisation seed")};
}

bool IsUrl(const std::string &s) { return s.rfind("http://", 0) == 0 || s.rfind("https://", 0) == 0; }

std::unique_ptr<embed::EncoderAdapter> MakeEncoder(const RunConfig &cfg, const std::vector<std::string> &fit_texts) {
  const auto &spec = cfg.Get("encoder");
  if (spec == "toy" || spec == "bow") {
    return std::make_unique<embed::BagOfWordsEncoder>(embed::BagOfWordsEncoder::Fit(fit_texts));
  }
  if (spec == "toy-linear") {
    embed::LinearEmbeddingConfig lc;
    lc.buckets = cfg.GetUnsigned("encoder_buckets");
    lc.dim = cfg.GetUnsigned("encoder_dim");
    lc.seed = cfg.GetUnsigned("encoder_seed");
    return std::make_unique<embed::LinearEmbeddingEncoder>(lc);
  }
  if (spec.rfind("model:", 0) == 0) return embed::LinearEmbeddingEncoder::Load(spec.substr(6));
  if (IsUrl(spec)) return std::make_unique<embed::HttpEncoder>(spec);
  if (spec.rfind("http:", 0) == 0) return std::make_unique<embed::HttpEncoder>(spec.substr(5));
  throw UsageError("unknown encoder '" + spec + "'");
}

// Owns detectors built from "null", "accept-all[:label]", "lexicon:<path>",
// "transcript:<path>" or "http:<url>" specs.
class DetectorFactory {
 public:
  ingest::DetectorAdapter &Make(const std::string &spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    std::unique_ptr<ingest::DetectorAdapter> d;
    if (kind == "null") {
      d = std::make_unique<ingest::NullDetector>();
    } else if (kind == "accept-all") {
      d = std::make_unique<ingest::AcceptAllDetector>(arg.empty() ? "affective" : arg);
    } else if (kind == "lexicon" && !arg.empty()) {
      d = std::make_unique<ingest::LexiconDetector>(ingest::LexiconDetector::FromFile(arg));
    } else if (kind == "transcript" && !arg.empty()) {
      d = std::make_unique<ingest::TranscriptDetector>(ingest::TranscriptDetector::FromFile(arg));
    } else if (IsUrl(spec)) {
      d = std::make_unique<ingest::HttpDetector>(transport_, spec);
    } else if (kind == "http" && !arg.empty()) {
      d = std::make_unique<ingest::HttpDetector>(transport_, arg);
    } else {
      throw UsageError("unknown detector '" + spec + "'");
    }
    owned_.push_back(std::move(d));
    return *owned_.back();
  }

 private:
  NetworkTransport transport_;
  std::vector<std::unique_ptr<ingest::DetectorAdapter>> owned_;
};

std::vector<OptionSpec> LlmSpecs(bool required) {
  return {{"llm", "", "openai (chat completions, key from LLM_API_KEY) or transcript:<path>", OR::kValue, required},
          Val("llm_base_url", "https://api.openai.com/v1", "chat completions base URL"),
          Val("llm_model", "gpt-4", "model name"),
          Val("llm_temperature", "0", "sampling temperature"),
          Val("llm_max_tokens", "512", "completion token limit"),
          Val("llm_record", "", "append every exchange to this transcript file"),
          Val("api_retries", "2", "extra attempts after an API failure"),
          Val("malformed_retries", "1", "extra attempts after a malformed completion")};
}

class LlmFactory {
 public:
  figdata::LlmClient *Make(const RunConfig &cfg) {
    const auto &spec = cfg.Get("llm");
    if (spec.empty()) return nullptr;
    if (spec == "openai") {
      figdata::LlmSettings s;
      s.base_url = cfg.Get("llm_base_url");
      s.model = cfg.Get("llm_model");
      s.temperature = cfg.GetDouble("llm_temperature");
      s.max_tokens = static_cast<int>(cfg.GetInt("llm_max_tokens"));
      inner_ = std::make_unique<figdata::ChatCompletionsClient>(transport_, s);
    } else if (spec.rfind("transcript:", 0) == 0) {
      inner_ = std::make_unique<figdata::TranscriptLlm>(spec.substr(11));
    } else {
      throw UsageError("unknown llm '" + spec + "'");
    }
    if (cfg.Has("llm_record")) {
      recorder_ = std::make_unique<figdata::RecordingLlm>(*inner_, cfg.Get("llm_record"));
      return recorder_.get();
    }
    return inner_.get();
  }

  static figdata::DmsGenerationConfig Generation(const RunConfig &cfg) {
    figdata::DmsGenerationConfig g;
    g.api_retries = static_cast<int>(cfg.GetInt("api_retries"));
    g.malformed_retries = static_cast<int>(cfg.GetInt("malformed_retries"));
    return g;
  }

 private:
  NetworkTransport transport_;
  std::unique_ptr<figdata::LlmClient> inner_;
  std::unique_ptr<figdata::LlmClient> recorder_;
};

UtcTime Utc(const RunConfig &cfg, const std::string &key) {
  try {
    return ParseUtc(cfg.Get(key));
  } catch (const std::invalid_argument &e) {
    throw UsageError("--" + FlagName(key) + ": " + e.what());
  }
}

fs::path OutDir(const RunConfig &cfg, const std::string &key = "out") {
  const fs::path dir = cfg.Get(key);
  fs::create_directories(dir);
  return dir;
}

fs::path OutFile(const RunConfig &cfg, const std::string &key = "out") {
  const fs::path file = cfg.Get(key);
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  return file;
}

void Write(const fs::path &path, std::string_view data, std::vector<fs::path> &outputs) {
  WriteFileAtomic(path, data);
  outputs.push_back(path);
}

std::vector<std::string> DatasetTexts(const std::vector<figdata::AnnotatedSentence> &data) {
  std::vector<std::string> texts;
  for (const auto &item : data) {
    texts.push_back(item.original);
    if (item.ems) texts.push_back(*item.ems);
    if (item.dms) texts.push_back(*item.dms);
  }
  return texts;
}

void RunIngest(const RunConfig &cfg, Streams &io) {
  auto m = StartManifest(cfg);
  const auto dir = OutDir(cfg);
  std::unique_ptr<HttpTransport> transport;
  if (cfg.Has("fixtures")) {
    transport = std::make_unique<FixtureTransport>(cfg.Get("fixtures"));
  } else {
    transport = std::make_unique<NetworkTransport>();
  }
  ingest::GitHubConfig gh;
  gh.api_base = cfg.Get("api_base");
  ingest::GitHubClient client(*transport, gh);
  const ingest::DateRange window{Utc(cfg, "from"), Utc(cfg, "to")};
  ingest::RawCommentStore store(dir / "raw_comments.jsonl");
  std::size_t added = 0;
  for (const auto &repo : cfg.GetList("repos")) {
    for (const auto &kind_name : cfg.GetList("kinds")) {
      ingest::CommentKind kind;
      try {
        kind = ingest::ParseCommentKind(kind_name);
      } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("--kinds: ") + e.what());
      }
      const auto r = client.FetchComments(repo, window, kind, cfg.GetUnsigned("limit"));
      if (r.partial) io.err << "warning: " << repo << " " << kind_name << ": partial listing: " << r.message << "\n";
      added += store.Merge(r.comments);
    }
  }
  const auto comments = store.Load();
  std::vector<ingest::Sentence> sentences;
  for (const auto &c : comments) {
    for (auto &s : ingest::SplitSentences(c)) sentences.push_back(std::move(s));
  }
  sentences = ingest::FilterShort(sentences, cfg.GetUnsigned("min_words"));
  std::vector<fs::path> outputs = {dir / "raw_comments.jsonl"};
  Write(dir / "sentences.jsonl", ingest::ToJsonl(sentences), outputs);
  FinishManifest(m, dir, outputs);
  io.out << "ingest: " << comments.size() << " comments (" << added << " new), " << sentences.size()
         << " sentences\n";
}

void RunScreen(const RunConfig &cfg, Streams &io) {
  auto m = StartManifest(cfg);
  const auto sentences = ingest::SentencesFromJsonl(ReadFile(cfg.Get("in")));
  DetectorFactory detectors;
  auto &metaphor = detectors.Make(cfg.Get("metaphor"));
  auto &idiom = detectors.Make(cfg.Get("idiom"));
  auto &sentiment = detectors.Make(cfg.Get("sentiment"));
  const auto r = ingest::ScreenCandidates(sentences, metaphor, idiom, sentiment, cfg.GetUnsigned("batch_size"));
  const auto dir = OutDir(cfg);
  std::vector<fs::path> outputs;
  Write(dir / "candidates.jsonl", ingest::ToJsonl(r.candidates), outputs);
  Write(dir / "unscreened.jsonl", ingest::ToJsonl(r.unscreened), outputs);
  Write(dir / "screened.jsonl", figdata::ToCanonicalJsonl(figdata::ToAnnotationItems(r.candidates)), outputs);
  FinishManifest(m, dir, outputs);
  io.out << "screen: " << r.candidates.size() << " candidate sentences, " << r.neutral << " neutral, "
         << r.without_candidates << " without candidates, " << r.unscreened.size() << " unscreened\n";
}

void RunGenDms(const RunConfig &cfg, Streams &io) {
  auto m = StartManifest(cfg);
  auto data = figdata::LoadDataset(cfg.Get("in"));
  LlmFactory factory;
  auto *llm = factory.Make(cfg);
  const auto gen = LlmFactory::Generation(cfg);
  std::size_t ready = 0;
  std::size_t parked = 0;
  for (auto &item : data) {
    if (item.status != figdata::Status::kEmsDone) continue;
    (figdata::AttachDmsCandidates(item, *llm, gen) ? ready : parked)++;
  }
  const auto out = OutFile(cfg);
  std::vector<fs::path> outputs;
  Write(out, figdata::ToCanonicalJsonl(data), outputs);
  FinishManifest(m, out, outputs);
  io.out << "gen-dms: " << ready << " items ready for selection, " << parked << " parked\n";
}

std::atomic<bool> g_stop{false};

void RunServe(const RunConfig &cfg, Streams &io) {
  auto m = StartManifest(cfg);
  annotate::StoreConfig sc;
  for (const auto &name : cfg.GetList("roster")) sc.roster.insert(name);
  sc.lease_ms = cfg.GetInt("lease_minutes") * 60 * 1000;
  if (cfg.Has("events")) sc.events_path = cfg.Get("events");
  if (cfg.Has("snapshot")) sc.snapshot_path = cfg.Get("snapshot");
  annotate::AnnotationStore store(figdata::LoadDataset(cfg.Get("in")), sc);
  LlmFactory factory;
  if (auto *llm = factory.Make(cfg)) store.SetCandidateGenerator(llm, LlmFactory::Generation(cfg));
  annotate::AnnotationServer server(store);
  if (!server.Bind(cfg.Get("host"), static_cast<int>(cfg.GetInt("port")))) {
    throw DomainError("cannot bind " + cfg.Get("host") + ":" + cfg.Get("port"));
  }
  g_stop = false;
  std::signal(SIGINT, [](int) { g_stop = true; });
  std::signal(SIGTERM, [](int) { g_stop = true; });
  std::thread watcher([&server] {
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.Stop();
  });
  io.out << "serve-annotation: listening on http://" << cfg.Get("host") << ":" << cfg.Get("port") << std::endl;
  server.ListenAfterBind();
  g_stop = true;
  watcher.join();
  std::vector<fs::path> outputs;
  if (sc.events_path && fs::exists(*sc.events_path)) outputs.push_back(*sc.events_path);
  if (sc.snapshot_path && fs::exists(*sc.snapshot_path)) outputs.push_back(*sc.snapshot_path);
  if (!outputs.empty()) FinishManifest(m, outputs.front(), outputs);
  io.out << "serve-annotation: stopped after " << store.Stats().events << " events\n";
}

void RunBuildTriplets(const RunConfig &cfg, Streams &io) {
  auto m = StartManifest(cfg);
  const auto data = figdata::LoadDataset(cfg.Get("in"));
  const auto build = figdata::BuildTriplets(data);
  const auto out = OutFile(cfg);
  std::vector<fs::path> outputs;
  Write(out, figdata::TripletsToJsonl(build.triplets), outputs);
  FinishManifest(m, out, outputs);
  io.out << "build-triplets: " << build.triplets.size() << " triplets from " << data.size() << " items, "
         << build.skipped.size() << " skipped\n";
}

void RunRq1(const RunConfig &cfg, Streams &io) {
  auto m = StartManifest(cfg);
  const auto data = figdata::LoadDataset(cfg.Get("dataset"));
  const auto encoder = MakeEncoder(cfg, DatasetTexts(data));
  embed::Rq1Config rc;
  rc.svt.alpha = cfg.GetDouble("alpha");
  rc.svt.apply = cfg.GetBool("svt");
  rc.preprocess = cfg.GetBool("preprocess");
  rc.fdr_q = cfg.GetDouble("fdr_q");
  auto result = embed::EvaluateRq1(data, *encoder, rc);
  if (cfg.Has("model_name")) result.report.model = cfg.Get("model_name");
  const auto dir = OutDir(cfg);
  const auto outputs = embed::WriteRq1(result, dir);
  FinishManifest(m, dir, outputs);
  io.out << embed::RenderRq1Table({result.report});
}

contrastive::TrainConfig TrainConfigFrom(const RunConfig &cfg, const std::string &prefix) {
  contrastive::TrainConfig t;
  t.epochs = static_cast<int>(cfg.GetInt(prefix + "epochs"));
  t.batch_size = static_cast<int>(cfg.GetInt(prefix + "batch_size"));
  t.learning_rate = cfg.GetDouble(prefix + "learning_rate");
  t.seed = cfg.GetUnsigned(prefix + "seed");
  t.similarity_scale = cfg.GetDouble("similarity_scale");
  try {
    t.Validate();
  } catch (const contrastive::ConfigError &e) {
    throw UsageError(e.what());
  }
  return t;
}

void RunFinetune(const RunConfig &cfg, Streams &io) {
  auto m = StartManifest(cfg);
  const auto triplets = figdata::LoadTriplets(cfg.Get("triplets"));
  std::vector<std::string> texts;
  for (const auto &t : triplets) texts.insert(texts.end(), {t.anchor, t.positive, t.negative});
  auto encoder = MakeEncoder(cfg, texts);
  auto *trainable = encoder->AsTrainable();
  if (trainable == nullptr) throw UsageError("finetune: encoder '" + cfg.Get("encoder") + "' is not trainable");
  const auto log = contrastive::FineTune(*encoder, triplets, TrainConfigFrom(cfg, ""));
  const auto dir = OutDir(cfg);
  std::vector<fs::path> outputs;
  trainable->Save(dir / "encoder.model");
  outputs.push_back(dir / "encoder.model");
  Write(dir / "training_log.jsonl", log.ToJsonl(), outputs);
  FinishManifest(m, dir, outputs);
  io.out << "finetune: " << log.epochs.size() << " epochs, mean loss " << FormatFixed(log.epochs.front().mean_loss, 6)
         << " -> " << FormatFixed(log.epochs.back().mean_loss, 6) << "\n";
}

void RunBench(const RunConfig &cfg, Streams &io) {
  auto m = StartManifest(cfg);
  bench::TaskKind kind;
  try {
    kind = bench::ParseTaskKind(cfg.Get("task"));
  } catch (const std::invalid_argument &e) {
    throw UsageError(std::string("--task: ") + e.what());
  }
  const auto dataset =
      bench::LoadTaskDataset(kind, cfg.Get("data"), cfg.GetDouble("sample_fraction"), cfg.GetUnsigned("sample_seed"));
  bench::ComparisonConfig cc;
  cc.skip_fl_stage = cfg.GetBool("skip_fl");
  std::vector<figdata::TripletRecord> triplets;
  if (!cc.skip_fl_stage) {
    if (!cfg.Has("triplets")) throw UsageError("bench: --triplets is required unless --skip-fl true");
    triplets = figdata::LoadTriplets(cfg.Get("triplets"));
  }
  std::vector<std::string> texts;
  for (const auto &item : dataset.items) texts.push_back(item.text);
  const auto encoder = MakeEncoder(cfg, texts);
  cc.model = cfg.Has("model_name") ? cfg.Get("model_name") : encoder->Name();
  cc.contrastive = TrainConfigFrom(cfg, "ft_");
  cc.task.train_fraction = cfg.GetDouble("train_fraction");
  cc.task.seed = cfg.GetUnsigned("seed");
  cc.task.epochs = static_cast<int>(cfg.GetInt("epochs"));
  cc.task.batch_size = static_cast<int>(cfg.GetInt("batch_size"));
  cc.task.learning_rate = cfg.GetDouble("learning_rate");
  cc.task.threshold = cfg.GetDouble("threshold");
  try {
    cc.task.Validate();
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
  const auto report = bench::RunComparison(dataset, *encoder, triplets, cc);
  const auto dir = OutDir(cfg);
  const auto outputs = bench::WriteComparison(report, dataset, dir);
  FinishManifest(m, dir, outputs);
  io.out << bench::RenderComparisonTable({report});
}

void RunPrevalence(const RunConfig &cfg, Streams &io) {
  auto m = StartManifest(cfg);
  std::shared_ptr<const prevalence::Lemmatizer> lemmatizer;
  if (cfg.Has("lemmas")) {
    lemmatizer = std::make_shared<prevalence::TableLemmatizer>(prevalence::TableLemmatizer::FromTsv(
        cfg.Get("lemmas"), std::make_shared<prevalence::RuleLemmatizer>()));
  } else {
    lemmatizer = std::make_shared<prevalence::RuleLemmatizer>();
  }
  prevalence::ExpressionLexicon lexicon;
  if (cfg.Has("lexicon") == cfg.Has("dataset")) throw UsageError("prevalence: give exactly one of --lexicon, --dataset");
  if (cfg.Has("lexicon")) {
    lexicon = prevalence::LoadLexiconCsv(cfg.Get("lexicon"), *lemmatizer);
  } else {
    lexicon = prevalence::LexiconFromDataset(figdata::LoadDataset(cfg.Get("dataset")), *lemmatizer);
  }
  const prevalence::Matcher matcher(lexicon, *lemmatizer);
  const auto corpus = prevalence::LoadCorpus(cfg.Get("corpus"));
  DetectorFactory detectors;
  prevalence::Confirmers confirmers;
  for (const auto &spec : cfg.GetList("confirmers")) confirmers.push_back(&detectors.Make(spec));
  const auto shards = std::max<std::uint64_t>(1, cfg.GetUnsigned("shards"));
  const auto batch = cfg.GetUnsigned("batch_size");
  prevalence::PrevalenceCounts counts;
  const std::span<const prevalence::CorpusSentence> all(corpus);
  for (std::uint64_t s = 0; s < shards; ++s) {
    const auto begin = all.size() * s / shards;
    const auto end = all.size() * (s + 1) / shards;
    counts.Merge(prevalence::ScanShard(all.subspan(begin, end - begin), matcher, confirmers, batch));
  }
  const auto report = prevalence::Finalize(counts, matcher.entries(), cfg.GetUnsigned("threshold"));
  const auto dir = OutDir(cfg);
  const auto outputs = prevalence::WriteReport(report, dir);
  FinishManifest(m, dir, outputs);
  io.out << "prevalence: " << report.sentences_total << " sentences; SE-specific " << FormatFixed(report.pct_se, 1)
         << "%, general " << FormatFixed(report.pct_general, 1) << "%, both " << FormatFixed(report.pct_both, 1)
         << "%\n";
}

void RunReport(const RunConfig &cfg, Streams &io) {
  auto m = StartManifest(cfg);
  const auto data = figdata::LoadDataset(cfg.Get("dataset"));
  const auto s = figdata::ComputeDatasetStats(data);
  std::map<std::string, std::size_t> by_status;
  for (const auto &item : data) ++by_status[std::string(figdata::ToString(item.status))];
  const auto triplets = figdata::BuildTriplets(data).triplets.size();
  nlohmann::ordered_json j = {{"sentences", s.n_sentences},
                              {"metaphor_sentences", s.n_metaphor_sentences},
                              {"idiom_sentences", s.n_idiom_sentences},
                              {"rejected", s.n_rejected},
                              {"unique_expressions", s.n_unique_expressions},
                              {"se_specific_expressions", s.n_se_specific},
                              {"general_expressions", s.n_general},
                              {"se_only_sentences", s.n_se_only_sentences},
                              {"general_only_sentences", s.n_general_only_sentences},
                              {"both_scope_sentences", s.n_both_scope_sentences},
                              {"triplets", triplets},
                              {"by_status", by_status}};
  std::string text;
  auto row = [&](const std::string &label, std::size_t n) { text += label + ": " + std::to_string(n) + "\n"; };
  row("sentences", s.n_sentences);
  row("  with metaphors", s.n_metaphor_sentences);
  row("  with idioms", s.n_idiom_sentences);
  row("  SE-specific only", s.n_se_only_sentences);
  row("  general only", s.n_general_only_sentences);
  row("  both scopes", s.n_both_scope_sentences);
  row("rejected", s.n_rejected);
  row("unique expressions", s.n_unique_expressions);
  row("  SE-specific", s.n_se_specific);
  row("  general", s.n_general);
  row("triplets", triplets);
  for (const auto &[status, n] : by_status) row("status " + status, n);
  const auto dir = OutDir(cfg);
  std::vector<fs::path> outputs;
  Write(dir / "dataset_stats.json", j.dump(2) + "\n", outputs);
  Write(dir / "dataset_stats.txt", text, outputs);
  Write(dir / "lexicon.csv", prevalence::LexiconToCsv(prevalence::LexiconFromDataset(data)), outputs);
  FinishManifest(m, dir, outputs);
  io.out << text;
}

std::vector<Command> BuildCommands() {
  const auto encoder_toy = EncoderSpecs("toy");
  const auto encoder_linear = EncoderSpecs("toy-linear");
  const std::vector<OptionSpec> ft = {Val("ft_epochs", "3", "contrastive epochs"),
                                      Val("ft_batch_size", "16", "contrastive batch size"),
                                      Val("ft_learning_rate", "2e-5", "contrastive Adam learning rate"),
                                      Val("ft_seed", "0", "contrastive shuffling seed"),
                                      Val("similarity_scale", "1.0", "InfoNCE similarity scale")};
  return {
      {"ingest",
       "Fetch GitHub issue/PR comments and split them into sentences",
       {{"repos", "", "comma-separated owner/name list", OR::kValue, true},
        Val("from", "2022-01-01", "window start (inclusive)"),
        Val("to", "2023-01-01", "window end (exclusive)"),
        Val("kinds", "issue,pull_request", "comment kinds"),
        Val("limit", "1000", "comments per repo and kind"),
        Val("api_base", "https://api.github.com", "GitHub REST base URL"),
        In("fixtures", "replay HTTP responses from this fixture directory", false),
        Val("min_words", "5", "drop sentences with fewer words"),
        Out("out", "output directory")},
       RunIngest},
      {"screen",
       "Flag figurative candidates and screen for affect",
       {In("in", "sentences JSONL"), {"metaphor", "", "metaphor detector", OR::kValue, true},
        {"idiom", "", "idiom detector", OR::kValue, true}, Val("sentiment", "accept-all", "affect screen detector"),
        Val("batch_size", "64", "texts per detector call"), Out("out", "output directory")},
       RunScreen},
      {"gen-dms",
       "Generate DMS candidates for items with an EMS",
       With({In("in", "annotated dataset JSONL"), Out("out", "output dataset JSONL")}, LlmSpecs(true)),
       RunGenDms},
      {"serve-annotation",
       "Serve the annotation workflow over HTTP",
       With({In("in", "base dataset JSONL"),
             {"roster", "", "comma-separated annotator names", OR::kValue, true},
             Val("host", "127.0.0.1", "bind address"), Val("port", "8080", "bind port"),
             Val("events", "", "append-only event log"), Val("snapshot", "", "dataset snapshot rewritten per change"),
             Val("lease_minutes", "30", "task lease length")},
            LlmSpecs(false)),
       RunServe},
      {"build-triplets",
       "Build (anchor, positive, negative) triplets",
       {In("in", "annotated dataset JSONL"), Out("out", "triplets JSONL")},
       RunBuildTriplets},
      {"rq1",
       "Compare EMS and DMS similarity to the original",
       With({In("dataset", "annotated dataset JSONL"), Out("out", "output directory"),
             Val("model_name", "", "model label in the report (default: encoder name)"),
             Val("alpha", "0.001", "soft-exponential alpha"), Val("svt", "true", "apply the singular value transform"),
             Val("preprocess", "true", "strip stack traces, URLs and mentions before encoding"),
             Val("fdr_q", "0.05", "Benjamini-Hochberg FDR level")},
            encoder_toy),
       RunRq1},
      {"finetune",
       "Contrastive fine-tuning on triplets",
       With({In("triplets", "triplets JSONL"), Out("out", "output directory"), Val("epochs", "3", "epochs"),
             Val("batch_size", "16", "batch size"), Val("learning_rate", "2e-5", "Adam learning rate"),
             Val("seed", "0", "shuffling seed"), Val("similarity_scale", "1.0", "InfoNCE similarity scale")},
            encoder_linear),
       RunFinetune},
      {"bench",
       "Baseline vs figurative-language fine-tuned encoder on a task",
       With(With({{"task", "", "emotion | incivility | priority", OR::kValue, true}, In("data", "task data file"),
                  In("triplets", "triplets JSONL", false), Out("out", "output directory"),
                  Val("model_name", "", "model label (default: encoder name)"),
                  Val("skip_fl", "false", "skip the contrastive stage (self-comparison)"),
                  Val("sample_fraction", "0.25", "priority stratified sample fraction"),
                  Val("sample_seed", "0", "priority sampling seed"),
                  Val("train_fraction", "0.8", "train share of the stratified split"),
                  Val("seed", "0", "split and head seed"), Val("epochs", "50", "head epochs"),
                  Val("batch_size", "32", "head batch size"), Val("learning_rate", "0.05", "head Adam learning rate"),
                  Val("threshold", "0.5", "multilabel decision threshold")},
                 ft),
            encoder_linear),
       RunBench},
      {"prevalence",
       "Count lexicon expressions in a sentence corpus",
       {In("corpus", "corpus JSONL"), In("lexicon", "lexicon CSV", false),
        In("dataset", "annotated dataset to derive the lexicon from", false),
        In("lemmas", "form<TAB>lemma table", false),
        Val("confirmers", "", "comma-separated detector specs; empty counts every match"),
        Val("shards", "1", "corpus shards"), Val("batch_size", "256", "texts per confirmer call"),
        Val("threshold", "10", "low-frequency threshold"), Out("out", "output directory")},
       RunPrevalence},
      {"report",
       "Dataset statistics, triplet count and lexicon",
       {In("dataset", "annotated dataset JSONL"), Out("out", "output directory")},
       RunReport},
  };
}

}  // namespace

const std::vector<Command> &Commands() {
  static const std::vector<Command> commands = BuildCommands();
  return commands;
}

}  // namespace figlang::cli
