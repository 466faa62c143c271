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

#include "figlang/contrastive/contrastive.h"

#include <chrono>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

#include "json.hpp"

#include "figlang/util/io.h"
#include "figlang/util/random.h"

namespace figlang {
namespace contrastive {

namespace {

double Softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Norm(const Eigen::VectorXd &v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw embed::EmbedError("info_nce: zero or non-finite vector");
  return n;
}

void CheckShapes(const TripletEmbedding &t) {
  if (t.a.size() == 0 || t.a.size() != t.p.size() || t.a.size() != t.n.size()) {
    throw embed::EmbedError("info_nce: anchor, positive and negative differ in dimension");
  }
}

}  // namespace

void TrainConfig::Validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw ConfigError("learning_rate must be positive");
  if (!(similarity_scale > 0.0) || !std::isfinite(similarity_scale)) {
    throw ConfigError("similarity_scale must be positive");
  }
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0)) throw ConfigError("adam.beta1 must be in [0, 1)");
  if (!(adam.beta2 >= 0.0 && adam.beta2 < 1.0)) throw ConfigError("adam.beta2 must be in [0, 1)");
  if (!(adam.eps > 0.0)) throw ConfigError("adam.eps must be positive");
}

double InfoNceFromSimilarities(double sim_p, double sim_n, double scale) {
  return Softplus(scale * (sim_n - sim_p));
}

double InfoNce(const TripletEmbedding &t, double scale) {
  CheckShapes(t);
  return InfoNceFromSimilarities(embed::Cosine(t.a, t.p), embed::Cosine(t.a, t.n), scale);
}

InfoNceGradient InfoNceWithGradient(const TripletEmbedding &t, double scale) {
  CheckShapes(t);
  const double na = Norm(t.a), np = Norm(t.p), nn = Norm(t.n);
  const double cp = t.a.dot(t.p) / (na * np);
  const double cn = t.a.dot(t.n) / (na * nn);
  const double z = scale * (cn - cp);
  const double dz = Sigmoid(z) * scale;

  InfoNceGradient g;
  g.loss = Softplus(z);
  const Eigen::VectorXd dcp_da = t.p / (na * np) - cp * t.a / (na * na);
  const Eigen::VectorXd dcn_da = t.n / (na * nn) - cn * t.a / (na * na);
  g.da = dz * (dcn_da - dcp_da);
  g.dp = -dz * (t.a / (na * np) - cp * t.p / (np * np));
  g.dn = dz * (t.a / (na * nn) - cn * t.n / (nn * nn));
  return g;
}

Adam::Adam(std::size_t size, double learning_rate, const AdamConfig &cfg)
    : lr_(learning_rate), cfg_(cfg), m_(size, 0.0), v_(size, 0.0) {}

void Adam::Step(std::span<double> params, std::span<const double> grads) {
  if (params.size() != m_.size() || grads.size() != m_.size()) {
    throw std::invalid_argument("adam: parameter count changed");
  }
  ++t_;
  const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * grads[i];
    v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * grads[i] * grads[i];
    params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + cfg_.eps);
  }
}

TripletEmbedding EmbedTriplet(const figdata::TripletRecord &record,
                              const embed::EncoderAdapter &encoder) {
  try {
    return {embed::MeanPool(encoder.Encode(record.anchor)).vector,
            embed::MeanPool(encoder.Encode(record.positive)).vector,
            embed::MeanPool(encoder.Encode(record.negative)).vector};
  } catch (const std::exception &e) {
    throw ContrastiveError("encoding triplet " + record.source_id + " failed: " + e.what());
  }
}

double BatchLoss(std::span<const figdata::TripletRecord> triplets,
                 const embed::EncoderAdapter &encoder, const TrainConfig &cfg) {
  if (triplets.empty()) throw std::invalid_argument("batch_loss: empty batch");
  double sum = 0.0;
  for (const auto &t : triplets) {
    try {
      sum += InfoNce(EmbedTriplet(t, encoder), cfg.similarity_scale);
    } catch (const embed::EmbedError &e) {
      throw ContrastiveError("triplet " + t.source_id + ": " + e.what());
    }
  }
  return sum / static_cast<double>(triplets.size());
}

std::string TrainingLog::ToJsonl() const {
  nlohmann::ordered_json header = {
      {"encoder", encoder},
      {"triplets", triplets},
      {"epochs", config.epochs},
      {"batch_size", config.batch_size},
      {"learning_rate", config.learning_rate},
      {"seed", config.seed},
      {"optimizer", {{"name", "adam"}, {"beta1", config.adam.beta1}, {"beta2", config.adam.beta2},
                     {"eps", config.adam.eps}}},
      {"similarity_scale", config.similarity_scale}};
  std::string out = header.dump() + "\n";
  for (const auto &e : epochs) {
    out += nlohmann::ordered_json{{"epoch", e.epoch}, {"mean_loss", e.mean_loss}, {"wall_time", e.wall_time}}
               .dump() +
           "\n";
  }
  return out;
}

void TrainingLog::Save(const std::filesystem::path &path) const { WriteFileAtomic(path, ToJsonl()); }

bool SameTraining(const TrainingLog &a, const TrainingLog &b) {
  if (a.encoder != b.encoder || a.triplets != b.triplets || a.epochs.size() != b.epochs.size()) return false;
  const auto &x = a.config, &y = b.config;
  if (x.epochs != y.epochs || x.batch_size != y.batch_size || x.learning_rate != y.learning_rate ||
      x.seed != y.seed || x.similarity_scale != y.similarity_scale || x.adam.beta1 != y.adam.beta1 ||
      x.adam.beta2 != y.adam.beta2 || x.adam.eps != y.adam.eps) {
    return false;
  }
  for (std::size_t i = 0; i < a.epochs.size(); ++i) {
    if (a.epochs[i].epoch != b.epochs[i].epoch || a.epochs[i].mean_loss != b.epochs[i].mean_loss) return false;
  }
  return true;
}

TrainingLog FineTune(embed::EncoderAdapter &encoder,
                     std::span<const figdata::TripletRecord> triplets,
                     const TrainConfig &cfg) {
  cfg.Validate();
  embed::TrainableEncoder *trainable = encoder.AsTrainable();
  if (trainable == nullptr) throw ContrastiveError("finetune: encoder '" + encoder.Name() + "' is not trainable");
  if (triplets.empty()) throw ContrastiveError("finetune: no triplets");

  TrainingLog log;
  log.config = cfg;
  log.encoder = encoder.Name();
  log.triplets = triplets.size();

  Adam adam(trainable->Parameters().size(), cfg.learning_rate, cfg.adam);
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(triplets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto batch = static_cast<std::size_t>(cfg.batch_size);

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    rng.Shuffle(std::span(order));
    double epoch_sum = 0.0;
    for (std::size_t lo = 0; lo < order.size(); lo += batch) {
      const std::size_t hi = std::min(order.size(), lo + batch);
      const double share = 1.0 / static_cast<double>(hi - lo);
      trainable->ZeroGrad();
      for (std::size_t k = lo; k < hi; ++k) {
        const auto &rec = triplets[order[k]];
        try {
          const auto g = InfoNceWithGradient(EmbedTriplet(rec, encoder), cfg.similarity_scale);
          trainable->Backward(rec.anchor, g.da * share);
          trainable->Backward(rec.positive, g.dp * share);
          trainable->Backward(rec.negative, g.dn * share);
          epoch_sum += g.loss;
        } catch (const embed::EmbedError &e) {
          throw ContrastiveError("triplet " + rec.source_id + ": " + e.what());
        }
      }
      adam.Step(trainable->Parameters(), trainable->Gradients());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    log.epochs.push_back({epoch, epoch_sum / static_cast<double>(order.size()), elapsed});
    spdlog::info("finetune: epoch {} mean loss {:.6f}", epoch, log.epochs.back().mean_loss);
  }
  return log;
}

}  // namespace contrastive
}  // namespace figlang
