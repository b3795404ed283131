// Copyright 2026 The acgl Authors.
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

#include "acgl/expander.h"

#include <cmath>

#include "acgl/error.h"
#include "doctest.h"
#include "test_util.h"

namespace acgl {
namespace {

TEST_CASE("weights are uniform in the documented range") {
  const FeatureExpander e(64, 512, 3);
  const double bound = 1.0 / 8.0;
  CHECK(e.hidden_dim() == 64);
  CHECK(e.expanded_dim() == 512);
  CHECK(e.weights().cwiseAbs().maxCoeff() <= bound);
  // Uniform(-b, b): mean 0, variance b^2 / 3, over 32768 draws.
  const double n = static_cast<double>(e.weights().size());
  const double mean = e.weights().mean();
  const double var = e.weights().array().square().sum() / n - mean * mean;
  // std of the sample mean is about 0.0032 * bound
  CHECK(std::abs(mean) < 0.02 * bound);
  CHECK(var == doctest::Approx(bound * bound / 3.0).epsilon(0.03));
}

TEST_CASE("seeded and frozen") {
  CHECK(FeatureExpander(8, 32, 1) == FeatureExpander(8, 32, 1));
  CHECK_FALSE(FeatureExpander(8, 32, 1) == FeatureExpander(8, 32, 2));
  const FeatureExpander e(8, 32, 1);
  std::mt19937_64 gen(0);
  const Eigen::MatrixXd h = testing::RandomMatrix(5, 8, gen);
  CHECK(e.Expand(h) == e.Expand(h));
}

TEST_CASE("expansion is relu(H W)") {
  std::mt19937_64 gen(4);
  const Eigen::MatrixXd w = testing::RandomMatrix(3, 7, gen);
  const Eigen::MatrixXd h = testing::RandomMatrix(4, 3, gen);
  const FeatureExpander e(w, 0, false);
  const Eigen::MatrixXd out = e.Expand(h);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 7; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += h(i, k) * w(k, j);
      CHECK(out(i, j) == doctest::Approx(std::max(s, 0.0)).epsilon(1e-14));
    }
  }
  CHECK(out.minCoeff() >= 0.0);
}

TEST_CASE("adjacency-aware expansion is relu(A H W)") {
  std::mt19937_64 gen(5);
  const Graph g = testing::RandomGraph(6, 1, 0.5, 2, gen);
  const NormalizedAdjacency adj = NormalizeAdjacency(g);
  const FeatureExpander e(4, 10, 2, true);
  const Eigen::MatrixXd h = testing::RandomMatrix(6, 4, gen);
  const Eigen::MatrixXd expected =
      (testing::DenseNormalizedAdjacency(g) * h * e.weights()).cwiseMax(0.0);
  CHECK((e.Expand(h, &adj) - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(e.uses_adjacency());
  CHECK_THROWS_AS(e.Expand(h), ValidationError);
  const Eigen::MatrixXd short_h = testing::RandomMatrix(5, 4, gen);
  CHECK_THROWS_AS(e.Expand(short_h, &adj), ShapeError);
}

TEST_CASE("invalid dimensions") {
  CHECK_THROWS_AS(FeatureExpander(16, 16, 0), ValidationError);
  CHECK_THROWS_AS(FeatureExpander(16, 8, 0), ValidationError);
  CHECK_THROWS_AS(FeatureExpander(0, 8, 0), ValidationError);
  const FeatureExpander e(4, 8, 0);
  CHECK_THROWS_AS(e.Expand(Eigen::MatrixXd::Zero(2, 5)), ShapeError);
}

TEST_CASE("expansion of zero and of identity-padded weights") {
  const FeatureExpander e(4, 9, 1);
  CHECK(e.Expand(Eigen::MatrixXd::Zero(3, 4)).isZero());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 9);
  w.leftCols(4).setIdentity();
  std::mt19937_64 gen(2);
  const Eigen::MatrixXd h = testing::RandomMatrix(5, 4, gen).cwiseAbs();
  const Eigen::MatrixXd out = FeatureExpander(w, 0, false).Expand(h);
  CHECK(out.leftCols(4) == h);
  CHECK(out.rightCols(5).isZero());
}

TEST_CASE("configured widths") {
  CHECK(FeatureExpander(256, 2048, 1).weights().rows() == 256);
  CHECK(FeatureExpander(256, 2048, 1).weights().cols() == 2048);
  CHECK(FeatureExpander(256, 1024, 1).weights().cols() == 1024);
}

TEST_CASE("random 5x8 by 8x16 against a triple loop") {
  std::mt19937_64 gen(3);
  const Eigen::MatrixXd h = testing::RandomMatrix(5, 8, gen);
  const Eigen::MatrixXd w = testing::RandomMatrix(8, 16, gen);
  const Eigen::MatrixXd out = FeatureExpander(w, 0, false).Expand(h);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 16; ++j) {
      double s = 0.0;
      for (int k = 0; k < 8; ++k) s += h(i, k) * w(k, j);
      worst = std::max(worst, std::abs(out(i, j) - std::max(s, 0.0)));
    }
  }
  CHECK(worst <= 1e-12);
}

}  // namespace
}  // namespace acgl
