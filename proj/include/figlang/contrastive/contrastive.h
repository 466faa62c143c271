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

#ifndef FIGLANG_CONTRASTIVE_CONTRASTIVE_H_
#define FIGLANG_CONTRASTIVE_CONTRASTIVE_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "figlang/embed/encoder.h"
#include "figlang/figdata/triplets.h"

namespace figlang {
namespace contrastive {

class ContrastiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TripletEmbedding {
  Eigen::VectorXd a;
  Eigen::VectorXd p;
  Eigen::VectorXd n;
};

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct TrainConfig {
  int epochs = 3;
  int batch_size = 16;
  double learning_rate = 2e-5;
  std::uint64_t seed = 0;
  AdamConfig adam;
  // Multiplies both cosine similarities before the softmax.
  double similarity_scale = 1.0;

  // Throws ConfigError on the first out-of-range field.
  void Validate() const;
};

// -log(e^{s sp} / (e^{s sp} + e^{s sn})) evaluated as softplus(s (sn - sp)).
double InfoNceFromSimilarities(double sim_p, double sim_n, double scale = 1.0);

// Cosine-based InfoNCE. Throws embed::EmbedError on a zero vector.
double InfoNce(const TripletEmbedding &t, double scale = 1.0);

struct InfoNceGradient {
  double loss = 0.0;
  Eigen::VectorXd da;
  Eigen::VectorXd dp;
  Eigen::VectorXd dn;
};

InfoNceGradient InfoNceWithGradient(const TripletEmbedding &t, double scale = 1.0);

// Adam with bias correction over a flat parameter vector.
class Adam {
 public:
  Adam(std::size_t size, double learning_rate, const AdamConfig &cfg);

  void Step(std::span<double> params, std::span<const double> grads);
  long steps() const { return t_; }

 private:
  double lr_;
  AdamConfig cfg_;
  std::vector<double> m_;
  std::vector<double> v_;
  long t_ = 0;
};

// Mean-pooled encodings of the three sentences.
TripletEmbedding EmbedTriplet(const figdata::TripletRecord &record,
                              const embed::EncoderAdapter &encoder);

// Mean InfoNCE over the batch. Throws std::invalid_argument on an empty
// batch and ContrastiveError naming the source id when encoding fails.
double BatchLoss(std::span<const figdata::TripletRecord> triplets,
                 const embed::EncoderAdapter &encoder, const TrainConfig &cfg);

struct EpochRecord {
  int epoch = 0;
  double mean_loss = 0.0;
  double wall_time = 0.0;
};

struct TrainingLog {
  TrainConfig config;
  std::string encoder;
  std::size_t triplets = 0;
  std::vector<EpochRecord> epochs;

  // One header line with the configuration, then one line per epoch.
  std::string ToJsonl() const;
  void Save(const std::filesystem::path &path) const;
};

// Equality on configuration and losses; wall times are ignored.
bool SameTraining(const TrainingLog &a, const TrainingLog &b);

// Updates `encoder` in place with epochs x shuffled batches of Adam
// steps. Throws ContrastiveError before any step when the adapter is not
// trainable or the triplet list is empty.
TrainingLog FineTune(embed::EncoderAdapter &encoder,
                     std::span<const figdata::TripletRecord> triplets,
                     const TrainConfig &cfg);

}  // namespace contrastive
}  // namespace figlang

#endif  // FIGLANG_CONTRASTIVE_CONTRASTIVE_H_
