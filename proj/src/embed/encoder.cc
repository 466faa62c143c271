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

#include "figlang/embed/encoder.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

#include "figlang/util/io.h"
#include "figlang/util/random.h"

namespace figlang {
namespace embed {

namespace {

constexpr std::array<std::string_view, 64> kStopwords = {
    "a",     "about", "all",   "am",    "an",    "and",   "are",  "as",    "at",   "be",
    "been",  "but",   "by",    "can",   "could", "did",   "do",   "does",  "for",  "from",
    "had",   "has",   "have",  "he",    "her",   "his",   "i",    "if",    "in",   "into",
    "is",    "it",    "its",   "me",    "my",    "no",    "not",  "of",    "on",   "or",
    "our",   "she",   "so",    "that",  "the",   "their", "them", "then",  "there", "these",
    "they",  "this",  "to",    "us",    "was",   "we",    "were", "what",  "will", "with",
    "would", "you",   "your",  "just"};

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

constexpr std::string_view kEmptyToken = "<empty>";

}  // namespace

std::vector<std::string> TokenizeWords(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c >= 0x80) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool IsStopword(std::string_view token) {
  return std::find(kStopwords.begin(), kStopwords.end(), token) != kStopwords.end();
}

BagOfWordsEncoder::BagOfWordsEncoder(std::vector<std::string> vocabulary)
    : vocabulary_(std::move(vocabulary)) {
  std::sort(vocabulary_.begin(), vocabulary_.end());
  vocabulary_.erase(std::unique(vocabulary_.begin(), vocabulary_.end()), vocabulary_.end());
}

BagOfWordsEncoder BagOfWordsEncoder::Fit(std::span<const std::string> texts) {
  std::vector<std::string> vocab;
  for (const auto &t : texts) {
    for (auto &tok : TokenizeWords(t)) {
      if (!IsStopword(tok)) vocab.push_back(std::move(tok));
    }
  }
  return BagOfWordsEncoder(std::move(vocab));
}

TokenEmbeddings BagOfWordsEncoder::Encode(std::string_view text) const {
  const auto tokens = TokenizeWords(text);
  TokenEmbeddings te;
  te.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(tokens.size()), Dimension());
  te.attention_mask.resize(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), tokens[i]);
    const auto col = (it != vocabulary_.end() && *it == tokens[i])
                         ? static_cast<Eigen::Index>(it - vocabulary_.begin())
                         : Dimension() - 1;
    te.matrix(static_cast<Eigen::Index>(i), col) = 1.0;
    te.attention_mask[i] = !IsStopword(tokens[i]);
  }
  return te;
}

LinearEmbeddingEncoder::LinearEmbeddingEncoder(const LinearEmbeddingConfig &cfg) : cfg_(cfg) {
  if (cfg_.buckets == 0 || cfg_.dim == 0) {
    throw EmbedError("linear encoder: buckets and dim must be positive");
  }
  weights_.resize(cfg_.buckets * cfg_.dim);
  grads_.assign(weights_.size(), 0.0);
  Rng rng(cfg_.seed);
  for (double &w : weights_) w = rng.Normal() * cfg_.init_scale;
}

std::size_t LinearEmbeddingEncoder::BucketOf(std::string_view token) const {
  return static_cast<std::size_t>(Fnv1a(token) % cfg_.buckets);
}

std::vector<std::size_t> LinearEmbeddingEncoder::Rows(std::string_view text) const {
  std::vector<std::size_t> rows;
  for (const auto &tok : TokenizeWords(text)) rows.push_back(BucketOf(tok));
  if (rows.empty()) rows.push_back(BucketOf(kEmptyToken));
  return rows;
}

TokenEmbeddings LinearEmbeddingEncoder::Encode(std::string_view text) const {
  const auto rows = Rows(text);
  TokenEmbeddings te;
  const auto d = static_cast<Eigen::Index>(cfg_.dim);
  te.matrix.resize(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    te.matrix.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXd>(weights_.data() + rows[i] * cfg_.dim, d);
  }
  te.attention_mask.assign(rows.size(), true);
  return te;
}

void LinearEmbeddingEncoder::ZeroGrad() { std::fill(grads_.begin(), grads_.end(), 0.0); }

void LinearEmbeddingEncoder::Backward(std::string_view text, const Eigen::VectorXd &grad_pooled) {
  if (grad_pooled.size() != static_cast<Eigen::Index>(cfg_.dim)) {
    throw EmbedError("linear encoder: gradient dimension mismatch");
  }
  const auto rows = Rows(text);
  const double share = 1.0 / static_cast<double>(rows.size());
  for (std::size_t r : rows) {
    double *g = grads_.data() + r * cfg_.dim;
    for (std::size_t j = 0; j < cfg_.dim; ++j) g[j] += share * grad_pooled(static_cast<Eigen::Index>(j));
  }
}

void LinearEmbeddingEncoder::Save(const std::filesystem::path &path) const {
  std::ostringstream out;
  out << "figlang-linear-encoder 1 " << cfg_.buckets << ' ' << cfg_.dim << ' ' << cfg_.seed
      << ' ' << cfg_.init_scale << '\n';
  out.write(reinterpret_cast<const char *>(weights_.data()),
            static_cast<std::streamsize>(weights_.size() * sizeof(double)));
  WriteFileAtomic(path, out.str());
}

std::unique_ptr<LinearEmbeddingEncoder> LinearEmbeddingEncoder::Load(
    const std::filesystem::path &path) {
  const std::string data = ReadFile(path);
  const auto nl = data.find('\n');
  if (nl == std::string::npos) throw IoError("linear encoder: missing header in " + path.string());
  std::istringstream header(data.substr(0, nl));
  std::string magic;
  int version = 0;
  LinearEmbeddingConfig cfg;
  header >> magic >> version >> cfg.buckets >> cfg.dim >> cfg.seed >> cfg.init_scale;
  if (magic != "figlang-linear-encoder" || version != 1 || !header) {
    throw IoError("linear encoder: bad header in " + path.string());
  }
  auto enc = std::make_unique<LinearEmbeddingEncoder>(cfg);
  const std::size_t bytes = enc->weights_.size() * sizeof(double);
  if (data.size() - nl - 1 != bytes) {
    throw IoError("linear encoder: weight block has wrong size in " + path.string());
  }
  std::memcpy(enc->weights_.data(), data.data() + nl + 1, bytes);
  return enc;
}

}  // namespace embed
}  // namespace figlang
