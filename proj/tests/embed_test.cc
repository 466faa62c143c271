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

#include <cmath>
#include <filesystem>
#include <numeric>

#include "doctest.h"
#include "figlang/embed/encoder.h"
#include "figlang/embed/geometry.h"
#include "figlang/util/random.h"
#include "oracles.h"

namespace figlang::embed {
namespace {

Eigen::MatrixXd RandomMatrix(Rng &rng, Eigen::Index n, Eigen::Index d, double lo, double hi) {
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = lo + (hi - lo) * rng.Uniform();
  return m;
}

testing::Rows ToRows(const Eigen::MatrixXd &m) {
  testing::Rows rows(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

double MaxAbsDiff(const Eigen::MatrixXd &m, const testing::Rows &rows) {
  double worst = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) worst = std::max(worst, std::fabs(m(i, j) - rows[i][j]));
  return worst;
}

TEST_CASE("mean_pool: single row is returned as is") {
  TokenEmbeddings te{Eigen::MatrixXd{{3, -1}}, {true}};
  const auto v = MeanPool(te, "x");
  CHECK(v.vector(0) == 3.0);
  CHECK(v.vector(1) == -1.0);
  CHECK(v.source_text == "x");
}

TEST_CASE("mean_pool: masked rows are excluded") {
  TokenEmbeddings two{Eigen::MatrixXd{{1, 0}, {0, 1}}, {true, true}};
  CHECK(MeanPool(two).vector.isApprox(Eigen::Vector2d(0.5, 0.5)));
  TokenEmbeddings three{Eigen::MatrixXd{{1, 0}, {0, 1}, {9, 9}}, {true, true, false}};
  CHECK(MeanPool(three).vector.isApprox(Eigen::Vector2d(0.5, 0.5)));
}

TEST_CASE("mean_pool: all-masked and mismatched inputs are rejected") {
  TokenEmbeddings masked{Eigen::MatrixXd{{1, 2}}, {false}};
  CHECK_THROWS_AS(MeanPool(masked), EmbedError);
  TokenEmbeddings mismatch{Eigen::MatrixXd{{1, 2}, {3, 4}}, {true}};
  CHECK_THROWS_AS(MeanPool(mismatch), EmbedError);
  TokenEmbeddings empty{Eigen::MatrixXd(0, 3), {}};
  CHECK_THROWS_AS(MeanPool(empty), EmbedError);
}

TEST_CASE("mean_pool: invariant under row permutation") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = static_cast<Eigen::Index>(1 + rng.Below(12));
    const auto d = static_cast<Eigen::Index>(1 + rng.Below(8));
    TokenEmbeddings te{RandomMatrix(rng, t, d, -5, 5), {}};
    for (Eigen::Index i = 0; i < t; ++i) te.attention_mask.push_back(rng.Below(4) != 0);
    te.attention_mask[rng.Below(static_cast<std::uint64_t>(t))] = true;
    std::vector<std::size_t> perm(static_cast<std::size_t>(t));
    std::iota(perm.begin(), perm.end(), 0);
    rng.Shuffle(std::span(perm));
    TokenEmbeddings shuffled{Eigen::MatrixXd(t, d), std::vector<bool>(perm.size())};
    for (std::size_t i = 0; i < perm.size(); ++i) {
      shuffled.matrix.row(static_cast<Eigen::Index>(i)) = te.matrix.row(static_cast<Eigen::Index>(perm[i]));
      shuffled.attention_mask[i] = te.attention_mask[perm[i]];
    }
    CHECK((MeanPool(te).vector - MeanPool(shuffled).vector).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("soft exponential matches its three branches") {
  CHECK(SoftExponential(0.0, 2.5) == 2.5);
  CHECK(SoftExponential(0.5, 2.0) == doctest::Approx((std::exp(1.0) - 1) / 0.5 + 0.5));
  CHECK(SoftExponential(-0.5, 2.0) == doctest::Approx(-std::log(1 + 0.5 * 1.5) / -0.5));
  CHECK_THROWS_AS(SoftExponential(-2.0, 0.1), EmbedError);
}

TEST_CASE("svt: alpha 0 reproduces the input") {
  Rng rng(17);
  SvtConfig cfg;
  cfg.alpha = 0.0;
  cfg.readd_mean = true;
  cfg.normalize_rows = false;
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.Below(64));
    const auto d = static_cast<Eigen::Index>(1 + rng.Below(64));
    const auto m = RandomMatrix(rng, n, d, -10, 10);
    const auto out = SvtNormalize(m, cfg);
    REQUIRE(out.rows() == n);
    REQUIRE(out.cols() == d);
    worst = std::max(worst, (out - m).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("svt: zero batch comes back unchanged") {
  SvtDiagnostics diag;
  const auto out = SvtNormalize(Eigen::MatrixXd::Zero(3, 3), SvtConfig{}, &diag);
  CHECK(diag.degenerate);
  CHECK(out.isZero(0));
}

TEST_CASE("svt: identical rows are degenerate after centring") {
  Eigen::MatrixXd m(3, 2);
  m << 1, 2, 1, 2, 1, 2;
  SvtDiagnostics diag;
  const auto out = SvtNormalize(m, SvtConfig{}, &diag);
  CHECK(diag.degenerate);
  CHECK(out == m);
}

TEST_CASE("svt: apply=false passes through") {
  Rng rng(5);
  const auto m = RandomMatrix(rng, 4, 3, -1, 1);
  SvtConfig cfg;
  cfg.apply = false;
  CHECK(SvtNormalize(m, cfg) == m);
}

TEST_CASE("svt: alpha 0.5 agrees with a Jacobi-SVD reimplementation") {
  Rng rng(23);
  for (auto [n, d] : {std::pair{6, 4}, std::pair{9, 5}, std::pair{4, 7}, std::pair{12, 12}}) {
    const auto m = RandomMatrix(rng, n, d, -2, 2);
    for (double alpha : {0.5, -0.05, 0.001}) {
      for (bool readd : {false, true}) {
        for (bool normalize : {true, false}) {
          SvtConfig cfg{alpha, true, readd, normalize};
          const auto out = SvtNormalize(m, cfg);
          const auto oracle = testing::JacobiSvtOracle(ToRows(m), alpha, readd, normalize);
          CAPTURE(n);
          CAPTURE(d);
          CAPTURE(alpha);
          CHECK(MaxAbsDiff(out, oracle) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("svt: default output rows are unit length") {
  Rng rng(29);
  const auto out = SvtNormalize(RandomMatrix(rng, 10, 6, -3, 3), SvtConfig{});
  for (Eigen::Index i = 0; i < out.rows(); ++i) CHECK(out.row(i).norm() == doctest::Approx(1.0));
}

TEST_CASE("cosine: reference values") {
  const Eigen::Vector2d a(1, 0), b(0, 1), c(1, 2), e(-1, -2);
  CHECK(Cosine(c, c) == doctest::Approx(1.0));
  CHECK(Cosine(a, b) == 0.0);
  CHECK(Cosine(c, e) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(Cosine(a, Eigen::Vector2d::Zero()), EmbedError);
  CHECK_THROWS_AS(Cosine(a, Eigen::Vector3d(1, 2, 3)), EmbedError);
}

TEST_CASE("cosine: bounds, symmetry and scale invariance") {
  Rng rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto d = static_cast<Eigen::Index>(1 + rng.Below(16));
    Eigen::VectorXd u = RandomMatrix(rng, d, 1, -3, 3);
    Eigen::VectorXd v = RandomMatrix(rng, d, 1, -3, 3);
    const double k = 0.01 + 100 * rng.Uniform();
    const double cuv = Cosine(u, v);
    CHECK(std::fabs(cuv) <= 1.0);
    CHECK(cuv == Cosine(v, u));
    CHECK(Cosine(u, k * u) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(Cosine(u, k * v) == doctest::Approx(cuv).epsilon(1e-12));
  }
}

TEST_CASE("tokenizer: lower-cased alphanumeric runs") {
  CHECK(TokenizeWords("A nasty-Bug, v2!") == std::vector<std::string>{"a", "nasty", "bug", "v2"});
  CHECK(TokenizeWords("caf\xc3\xa9 ok") == std::vector<std::string>{"caf\xc3\xa9", "ok"});
  CHECK(TokenizeWords("").empty());
}

TEST_CASE("bag of words: content words one-hot, stopwords masked") {
  const std::vector<std::string> texts = {"the build is broken", "a nasty bug"};
  const auto enc = BagOfWordsEncoder::Fit(texts);
  CHECK(enc.vocabulary() == std::vector<std::string>{"broken", "bug", "build", "nasty"});
  CHECK(enc.Dimension() == 5);
  const auto te = enc.Encode("the nasty zebra");
  CHECK(te.attention_mask == std::vector<bool>{false, true, true});
  CHECK(te.matrix(1, 3) == 1.0);
  CHECK(te.matrix(2, 4) == 1.0);
  const std::vector<std::string> reversed = {"a nasty bug", "the build is broken"};
  CHECK(BagOfWordsEncoder::Fit(reversed).vocabulary() == enc.vocabulary());
}

TEST_CASE("linear encoder: deterministic by seed") {
  LinearEmbeddingConfig cfg{64, 4, 9, 1.0};
  LinearEmbeddingEncoder a(cfg), b(cfg);
  CHECK(a.Encode("nasty bug").matrix == b.Encode("nasty bug").matrix);
  cfg.seed = 10;
  LinearEmbeddingEncoder c(cfg);
  CHECK(a.Encode("nasty bug").matrix != c.Encode("nasty bug").matrix);
  CHECK(a.Encode("").matrix.rows() == 1);
}

TEST_CASE("linear encoder: backward matches finite differences") {
  LinearEmbeddingEncoder enc(LinearEmbeddingConfig{16, 3, 2, 0.5});
  const std::string text = "fix the the flaky test";
  const Eigen::Vector3d g(0.3, -1.2, 0.7);
  auto objective = [&]() { return g.dot(MeanPool(enc.Encode(text)).vector); };
  enc.ZeroGrad();
  enc.Backward(text, g);
  const auto grads = std::vector<double>(enc.Gradients().begin(), enc.Gradients().end());
  auto params = enc.Parameters();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + 1e-6;
    const double up = objective();
    params[i] = saved - 1e-6;
    const double down = objective();
    params[i] = saved;
    CHECK(grads[i] == doctest::Approx((up - down) / 2e-6).epsilon(1e-6));
  }
}

TEST_CASE("linear encoder: save and load round trip") {
  LinearEmbeddingEncoder enc(LinearEmbeddingConfig{32, 5, 4, 0.25});
  enc.Parameters()[7] = 42.0;
  const auto path = std::filesystem::temp_directory_path() / "figlang_embed_test" / "enc.bin";
  enc.Save(path);
  const auto loaded = LinearEmbeddingEncoder::Load(path);
  CHECK(std::equal(enc.Parameters().begin(), enc.Parameters().end(), loaded->Parameters().begin()));
  CHECK(loaded->config().dim == 5);
  std::filesystem::remove_all(path.parent_path());
}

}  // namespace
}  // namespace figlang::embed
