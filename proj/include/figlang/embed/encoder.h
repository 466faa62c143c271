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

#ifndef FIGLANG_EMBED_ENCODER_H_
#define FIGLANG_EMBED_ENCODER_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "figlang/embed/geometry.h"

namespace figlang {
namespace embed {

class TrainableEncoder;

// Text in, per-token embedding matrix out. Tokenization belongs to the
// adapter.
class EncoderAdapter {
 public:
  virtual ~EncoderAdapter() = default;

  virtual std::string Name() const = 0;
  virtual Eigen::Index Dimension() const = 0;
  virtual TokenEmbeddings Encode(std::string_view text) const = 0;
  virtual std::unique_ptr<EncoderAdapter> Clone() const = 0;

  // Non-null when the adapter's parameters can be updated.
  virtual TrainableEncoder *AsTrainable() { return nullptr; }
};

// Update contract used by contrastive and task fine-tuning. Gradients are
// taken with respect to the mean-pooled sentence vector; the adapter
// propagates them into its own parameters.
class TrainableEncoder : public EncoderAdapter {
 public:
  TrainableEncoder *AsTrainable() override { return this; }

  virtual std::span<double> Parameters() = 0;
  virtual std::span<const double> Gradients() const = 0;
  virtual void ZeroGrad() = 0;
  virtual void Backward(std::string_view text, const Eigen::VectorXd &grad_pooled) = 0;

  virtual void Save(const std::filesystem::path &path) const = 0;
};

// Lower-cased runs of ASCII letters/digits; bytes >= 0x80 are kept
// inside tokens so UTF-8 words stay whole.
std::vector<std::string> TokenizeWords(std::string_view text);

bool IsStopword(std::string_view token);

// One-hot rows over a fixed vocabulary plus one out-of-vocabulary slot.
// Stopwords produce masked rows.
class BagOfWordsEncoder : public EncoderAdapter {
 public:
  explicit BagOfWordsEncoder(std::vector<std::string> vocabulary);

  // Sorted vocabulary of the non-stopword tokens in `texts`; the result
  // does not depend on text order.
  static BagOfWordsEncoder Fit(std::span<const std::string> texts);

  std::string Name() const override { return "bow"; }
  Eigen::Index Dimension() const override {
    return static_cast<Eigen::Index>(vocabulary_.size()) + 1;
  }
  TokenEmbeddings Encode(std::string_view text) const override;
  std::unique_ptr<EncoderAdapter> Clone() const override {
    return std::make_unique<BagOfWordsEncoder>(*this);
  }

  const std::vector<std::string> &vocabulary() const { return vocabulary_; }

 private:
  std::vector<std::string> vocabulary_;
};

struct LinearEmbeddingConfig {
  std::size_t buckets = 4096;
  std::size_t dim = 32;
  std::uint64_t seed = 1;
  // Standard deviation of the initial weights.
  double init_scale = 1.0;
};

// Hashed token embedding table: each token maps to one row of a
// buckets x dim matrix (FNV-1a bucket index). Trainable.
class LinearEmbeddingEncoder : public TrainableEncoder {
 public:
  explicit LinearEmbeddingEncoder(const LinearEmbeddingConfig &cfg);

  static std::unique_ptr<LinearEmbeddingEncoder> Load(const std::filesystem::path &path);

  std::string Name() const override { return "toy-linear"; }
  Eigen::Index Dimension() const override { return static_cast<Eigen::Index>(cfg_.dim); }
  TokenEmbeddings Encode(std::string_view text) const override;
  std::unique_ptr<EncoderAdapter> Clone() const override {
    return std::make_unique<LinearEmbeddingEncoder>(*this);
  }

  std::span<double> Parameters() override { return weights_; }
  std::span<const double> Gradients() const override { return grads_; }
  void ZeroGrad() override;
  void Backward(std::string_view text, const Eigen::VectorXd &grad_pooled) override;
  void Save(const std::filesystem::path &path) const override;

  const LinearEmbeddingConfig &config() const { return cfg_; }
  std::size_t BucketOf(std::string_view token) const;

 private:
  std::vector<std::size_t> Rows(std::string_view text) const;

  LinearEmbeddingConfig cfg_;
  std::vector<double> weights_;
  std::vector<double> grads_;
};

// Delegates to an embedding server: POST {"text": ...} to `url`, expects
// {"tokens": [[...], ...], "attention_mask": [1, 0, ...]}.
class HttpEncoder : public EncoderAdapter {
 public:
  HttpEncoder(std::string url, std::string name = "http");

  std::string Name() const override { return name_; }
  Eigen::Index Dimension() const override { return dim_; }
  TokenEmbeddings Encode(std::string_view text) const override;
  std::unique_ptr<EncoderAdapter> Clone() const override {
    return std::make_unique<HttpEncoder>(*this);
  }

 private:
  std::string url_;
  std::string name_;
  mutable Eigen::Index dim_ = 0;
};

}  // namespace embed
}  // namespace figlang

#endif  // FIGLANG_EMBED_ENCODER_H_
