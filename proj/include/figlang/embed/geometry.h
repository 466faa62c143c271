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

#ifndef FIGLANG_EMBED_GEOMETRY_H_
#define FIGLANG_EMBED_GEOMETRY_H_

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace figlang {
namespace embed {

class EmbedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Per-token encoder output: one row per token.
struct TokenEmbeddings {
  Eigen::MatrixXd matrix;
  std::vector<bool> attention_mask;
};

struct SentenceVector {
  Eigen::VectorXd vector;
  std::string source_text;
};

// Arithmetic mean of the unmasked rows.
// Throws EmbedError on shape mismatch or when every row is masked.
SentenceVector MeanPool(const TokenEmbeddings &te, std::string source_text = {});

// Singular value transformation settings.
struct SvtConfig {
  // Soft-exponential shape parameter.
  double alpha = 0.001;
  // When false the batch passes through untouched.
  bool apply = true;
  // Add the column means back after reconstruction.
  bool readd_mean = false;
  // L2-normalize each output row.
  bool normalize_rows = true;
};

// Soft-exponential: s for alpha == 0, (exp(alpha s) - 1) / alpha + alpha
// for alpha > 0, -log(1 - alpha (s + alpha)) / alpha for alpha < 0.
// Throws EmbedError when the log argument is not positive.
double SoftExponential(double alpha, double s);

struct SvtDiagnostics {
  bool degenerate = false;
  Eigen::Index rank = 0;
  Eigen::VectorXd singular_values;
  Eigen::VectorXd transformed_values;
};

// Centres the n x d batch on its column means, takes the thin SVD,
// maps every non-zero singular value through SoftExponential,
// reconstructs, optionally re-adds the means and L2-normalizes rows.
// Singular values at or below the numerical rank tolerance stay zero.
// A batch that is zero after centring comes back unchanged (logged).
Eigen::MatrixXd SvtNormalize(const Eigen::MatrixXd &batch, const SvtConfig &cfg,
                             SvtDiagnostics *diagnostics = nullptr);

// Cosine similarity clamped to [-1, 1]. Throws EmbedError on a zero
// vector or a dimension mismatch.
double Cosine(const Eigen::Ref<const Eigen::VectorXd> &u,
              const Eigen::Ref<const Eigen::VectorXd> &v);
double Cosine(const SentenceVector &u, const SentenceVector &v);

}  // namespace embed
}  // namespace figlang

#endif  // FIGLANG_EMBED_GEOMETRY_H_
