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

#include "figlang/embed/geometry.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace figlang {
namespace embed {

SentenceVector MeanPool(const TokenEmbeddings &te, std::string source_text) {
  const auto rows = te.matrix.rows();
  if (static_cast<std::size_t>(rows) != te.attention_mask.size()) {
    throw EmbedError("mean_pool: mask length does not match token count");
  }
  if (te.matrix.cols() == 0) throw EmbedError("mean_pool: zero embedding dimension");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(te.matrix.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!te.attention_mask[static_cast<std::size_t>(r)]) continue;
    sum += te.matrix.row(r).transpose();
    ++kept;
  }
  if (kept == 0) throw EmbedError("mean_pool: every token is masked");
  return SentenceVector{sum / static_cast<double>(kept), std::move(source_text)};
}

double SoftExponential(double alpha, double s) {
  if (alpha == 0.0) return s;
  if (alpha > 0.0) return std::expm1(alpha * s) / alpha + alpha;
  const double arg = 1.0 - alpha * (s + alpha);
  if (!(arg > 0.0)) throw EmbedError("soft-exponential: log argument out of domain");
  return -std::log(arg) / alpha;
}

Eigen::MatrixXd SvtNormalize(const Eigen::MatrixXd &batch, const SvtConfig &cfg,
                             SvtDiagnostics *diagnostics) {
  if (batch.rows() < 1) throw EmbedError("svt: empty batch");
  if (!std::isfinite(cfg.alpha)) throw EmbedError("svt: alpha must be finite");
  if (!batch.allFinite()) throw EmbedError("svt: non-finite input");
  if (!cfg.apply) return batch;

  const Eigen::RowVectorXd mean = batch.colwise().mean();
  const Eigen::MatrixXd centred = batch.rowwise() - mean;
  if (centred.cwiseAbs().maxCoeff() == 0.0) {
    spdlog::warn("svt: batch has rank 0 after centring; returning input unchanged");
    if (diagnostics) diagnostics->degenerate = true;
    return batch;
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd &s = svd.singularValues();
  const double tol = static_cast<double>(std::max(centred.rows(), centred.cols())) *
                     std::numeric_limits<double>::epsilon() * s(0);
  Eigen::VectorXd t = Eigen::VectorXd::Zero(s.size());
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol) {
      t(i) = SoftExponential(cfg.alpha, s(i));
      ++rank;
    }
  }
  Eigen::MatrixXd out = svd.matrixU() * t.asDiagonal() * svd.matrixV().transpose();
  if (cfg.readd_mean) out.rowwise() += mean;
  if (cfg.normalize_rows) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      const double norm = out.row(r).norm();
      if (norm > 0.0) out.row(r) /= norm;
    }
  }
  if (diagnostics) {
    diagnostics->degenerate = false;
    diagnostics->rank = rank;
    diagnostics->singular_values = s;
    diagnostics->transformed_values = t;
  }
  return out;
}

double Cosine(const Eigen::Ref<const Eigen::VectorXd> &u,
              const Eigen::Ref<const Eigen::VectorXd> &v) {
  if (u.size() != v.size()) throw EmbedError("cosine: dimension mismatch");
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw EmbedError("cosine: zero vector");
  return std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
}

double Cosine(const SentenceVector &u, const SentenceVector &v) {
  return Cosine(u.vector, v.vector);
}

}  // namespace embed
}  // namespace figlang
