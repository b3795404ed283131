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

#include "acgl/analytic.h"

#include <Eigen/LU>

#include "acgl/error.h"
#include "doctest.h"
#include "stream_oracle.h"
#include "test_util.h"

namespace acgl {
namespace {

using testing::RandomInt;
using testing::RandomMatrix;
using testing::RelativeFrobenius;

// (X^T X + gamma I)^{-1} by LU of the explicit matrix.
Eigen::MatrixXd ReferenceR(const Eigen::MatrixXd& x, double gamma) {
  const Eigen::Index d = x.cols();
  return (x.transpose() * x + gamma * Eigen::MatrixXd::Identity(d, d))
      .fullPivLu()
      .inverse();
}

SessionBatch Batch(Eigen::MatrixXd x, std::vector<int> labels,
                   std::vector<int> ids) {
  return MakeSessionBatch(std::move(x), labels, std::move(ids));
}

TEST_CASE("session batch targets are one-hot in class_ids order") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(3, 2);
  const SessionBatch b = Batch(x, {7, 5, 7}, {5, 7});
  Eigen::MatrixXd y(3, 2);
  y << 0, 1, 1, 0, 0, 1;
  CHECK(b.y == y);
  CHECK_THROWS_AS(Batch(x, {7, 5, 6}, {5, 7}), ValidationError);
  CHECK_THROWS_AS(Batch(x, {5, 5, 5}, {5, 5}), ValidationError);
  CHECK_THROWS_AS(Batch(x, {5, 5}, {5}), ShapeError);

  SessionBatch broken = b;
  broken.y(0, 0) = 1.0;
  CHECK_THROWS_AS(ValidateSessionBatch(broken), ValidationError);
}

TEST_CASE("alignment solves the ridge normal equations") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = RandomInt(gen, 1, 64);
    const int n = RandomInt(gen, 1, 100);
    const double gamma = std::pow(10.0, RandomInt(gen, -3, 2));
    std::vector<int> labels(n);
    for (int& l : labels) l = RandomInt(gen, 0, 3);
    const SessionBatch b =
        Batch(RandomMatrix(n, d, gen).cwiseMax(0.0), labels, {0, 1, 2, 3});
    const AnalyticState s = AlignBase(b, gamma);
    const Eigen::MatrixXd gram =
        b.x.transpose() * b.x + gamma * Eigen::MatrixXd::Identity(d, d);
    const Eigen::MatrixXd rhs = b.x.transpose() * b.y;
    CHECK((gram * s.weights() - rhs).norm() <=
          1e-9 * std::max(rhs.norm(), 1e-12));
    CHECK(RelativeFrobenius(s.autocorrelation(), ReferenceR(b.x, gamma)) <=
          1e-9);
    CHECK(s.autocorrelation() == s.autocorrelation().transpose());
    CHECK(s.seen_classes() == std::vector<int>{0, 1, 2, 3});
    CHECK(s.gamma() == gamma);
  }
}

TEST_CASE("Woodbury and direct updates agree with explicit inversion") {
  std::mt19937_64 gen(37);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = RandomInt(gen, 1, 64);
    const double gamma = std::pow(10.0, RandomInt(gen, -2, 1));
    const Eigen::MatrixXd x0 = RandomMatrix(RandomInt(gen, 1, 80), d, gen);
    const Eigen::MatrixXd x1 = RandomMatrix(RandomInt(gen, 1, 80), d, gen);
    const Eigen::MatrixXd r = ReferenceR(x0, gamma);
    const Eigen::MatrixXd expected =
        (r.fullPivLu().inverse() + x1.transpose() * x1).fullPivLu().inverse();
    for (auto method : {AutocorrelationUpdate::kWoodbury,
                        AutocorrelationUpdate::kDirect,
                        AutocorrelationUpdate::kAuto}) {
      const Eigen::MatrixXd got = UpdateAutocorrelation(r, x1, method);
      CHECK(RelativeFrobenius(got, expected) <= 1e-9);
      CHECK(got == got.transpose());
    }
  }
}

TEST_CASE("an empty session leaves R unchanged") {
  std::mt19937_64 gen(1);
  const Eigen::MatrixXd r = ReferenceR(RandomMatrix(5, 4, gen), 1.0);
  CHECK(UpdateAutocorrelation(r, Eigen::MatrixXd(0, 4)) == r);
  CHECK_THROWS_AS(UpdateAutocorrelation(r, Eigen::MatrixXd::Zero(2, 3)),
                  ShapeError);
}

TEST_CASE("recursive weights equal the joint solution") {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = std::vector<int>{8, 16, 32, 64}[trial % 4];
    const int sessions = RandomInt(gen, 2, 8);
    const double gamma = std::vector<double>{1e-3, 1e-2, 1, 10}[trial / 10];
    const auto stream = testing::RandomStream(gen, d, sessions);
    const auto cmp = testing::CompareRecursionWithJoint(stream, gamma);
    CAPTURE(d);
    CAPTURE(sessions);
    CAPTURE(gamma);
    CHECK(cmp.max_vs_library_joint <= 1e-8);
    CHECK(cmp.max_vs_qr_joint <= 1e-8);
  }
}

TEST_CASE("forced update paths give the same weights") {
  std::mt19937_64 gen(43);
  const auto stream = testing::RandomStream(gen, 16, 5);
  for (auto method :
       {AutocorrelationUpdate::kWoodbury, AutocorrelationUpdate::kDirect}) {
    CHECK(testing::CompareRecursionWithJoint(stream, 0.1, method)
              .max_vs_library_joint <= 1e-8);
  }
}

TEST_CASE("R does not depend on session order") {
  std::mt19937_64 gen(47);
  const Eigen::MatrixXd a = RandomMatrix(7, 10, gen);
  const Eigen::MatrixXd b = RandomMatrix(12, 10, gen);
  const Eigen::MatrixXd r0 = ReferenceR(Eigen::MatrixXd(0, 10), 0.5);
  const Eigen::MatrixXd ab =
      UpdateAutocorrelation(UpdateAutocorrelation(r0, a), b);
  const Eigen::MatrixXd ba =
      UpdateAutocorrelation(UpdateAutocorrelation(r0, b), a);
  CHECK(RelativeFrobenius(ab, ba) <= 1e-12);
}

TEST_CASE("state size is d^2 + d * classes regardless of samples") {
  std::mt19937_64 gen(53);
  const int d = 12;
  const auto stream = testing::RandomStream(gen, d, 6);
  AnalyticState s = AlignBase(stream[0], 1.0);
  int classes = static_cast<int>(stream[0].class_ids.size());
  for (std::size_t n = 1; n < stream.size(); ++n) {
    s = UpdateWeights(s, stream[n]);
    classes += static_cast<int>(stream[n].class_ids.size());
    CHECK(s.StoredScalarCount() == std::size_t(d * d + d * classes));
    CHECK(s.autocorrelation().rows() == d);
    CHECK(s.autocorrelation().cols() == d);
    CHECK(s.weights().cols() == classes);
  }
}

TEST_CASE("updates reject repeated classes and bad shapes") {
  std::mt19937_64 gen(59);
  const SessionBatch base = Batch(RandomMatrix(6, 4, gen), {0, 1, 0, 1, 0, 1},
                                  {0, 1});
  const AnalyticState s = AlignBase(base, 1.0);
  CHECK_THROWS_AS(UpdateWeights(s, Batch(RandomMatrix(2, 4, gen), {1, 1}, {1})),
                  ValidationError);
  CHECK_THROWS_AS(UpdateWeights(s, Batch(RandomMatrix(2, 3, gen), {2, 2}, {2})),
                  ShapeError);
  CHECK_THROWS_AS(AlignBase(base, 0.0), ValidationError);
  CHECK_THROWS_AS(AlignBase(base, -1.0), ValidationError);
  CHECK_THROWS_AS(AlignBase(base, std::nan("")), ValidationError);
  CHECK_THROWS_AS(JointSolve({}, 1.0), ValidationError);
}

TEST_CASE("joint class order follows batch order") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(1, 2);
  const std::vector<SessionBatch> batches = {Batch(x, {3}, {3, 1}),
                                             Batch(x, {0}, {0})};
  CHECK(JointClassOrder(batches) == std::vector<int>{3, 1, 0});
}

TEST_CASE("prediction maps argmax through class ids, ties to lowest id") {
  Eigen::MatrixXd w(2, 3);
  w << 1, 0, 0,
       0, 1, 1;
  const std::vector<int> ids = {9, 4, 2};
  Eigen::MatrixXd x(3, 2);
  x << 1, 0,
       0, 1,
       0, 0;
  CHECK(PredictWithWeights(x, w, ids) == std::vector<int>{9, 2, 2});
  CHECK_THROWS_AS(PredictWithWeights(Eigen::MatrixXd::Zero(1, 3), w, ids),
                  ShapeError);
}

TEST_CASE("state reassembly validates its parts") {
  const Eigen::MatrixXd r = Eigen::MatrixXd::Identity(3, 3);
  const Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 2);
  const AnalyticState s = AnalyticState::FromParts(w, r, 1.0, {0, 1});
  CHECK(s.feature_dim() == 3);
  CHECK(s.num_seen_classes() == 2);
  CHECK_THROWS_AS(AnalyticState::FromParts(w, r, 1.0, {0}), ShapeError);
  CHECK_THROWS_AS(
      AnalyticState::FromParts(w, Eigen::MatrixXd::Identity(2, 2), 1.0, {0, 1}),
      ShapeError);
  Eigen::MatrixXd asym = r;
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS(AnalyticState::FromParts(w, asym, 1.0, {0, 1}),
                  ValidationError);
  CHECK_THROWS_AS(AnalyticState::FromParts(w, r, 0.0, {0, 1}),
                  ValidationError);
}

TEST_CASE("identity features and targets") {
  const SessionBatch b =
      Batch(Eigen::MatrixXd::Identity(2, 2), {0, 1}, {0, 1});
  const AnalyticState s = AlignBase(b, 1.0);
  CHECK((s.weights() - 0.5 * Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("heavy regularization shrinks the weights to zero") {
  std::mt19937_64 gen(61);
  const SessionBatch b =
      Batch(RandomMatrix(10, 4, gen), {0, 1, 0, 1, 0, 1, 0, 1, 0, 1}, {0, 1});
  CHECK(AlignBase(b, 1e12).weights().norm() < 1e-9);
}

TEST_CASE("20x8 ridge solve against an explicit dense inverse") {
  std::mt19937_64 gen(67);
  std::vector<int> labels(20);
  for (int i = 0; i < 20; ++i) labels[i] = i % 3;
  const SessionBatch b = Batch(RandomMatrix(20, 8, gen), labels, {0, 1, 2});
  const Eigen::MatrixXd expected =
      ReferenceR(b.x, 0.01) * b.x.transpose() * b.y;
  CHECK(RelativeFrobenius(AlignBase(b, 0.01).weights(), expected) <= 1e-9);
}

TEST_CASE("scalar autocorrelation update") {
  const Eigen::MatrixXd r = Eigen::MatrixXd::Constant(1, 1, 1.0);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Constant(1, 1, 1.0);
  CHECK(UpdateAutocorrelation(r, x)(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("all-zero session features") {
  std::mt19937_64 gen(71);
  const SessionBatch base =
      Batch(RandomMatrix(8, 5, gen), {0, 1, 0, 1, 0, 1, 0, 1}, {0, 1});
  const AnalyticState s = AlignBase(base, 1.0);
  const AnalyticState t =
      UpdateWeights(s, Batch(Eigen::MatrixXd::Zero(3, 5), {2, 3, 2}, {2, 3}));
  CHECK(t.weights().leftCols(2) == s.weights());
  CHECK(t.weights().rightCols(2).isZero());
  CHECK(t.seen_classes() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("joint solve on one batch is the alignment") {
  std::mt19937_64 gen(73);
  const SessionBatch b =
      Batch(RandomMatrix(9, 6, gen), {0, 1, 2, 0, 1, 2, 0, 1, 2}, {0, 1, 2});
  const std::vector<SessionBatch> one = {b};
  CHECK(RelativeFrobenius(JointSolve(one, 0.3), AlignBase(b, 0.3).weights()) <=
        1e-12);
}

TEST_CASE("a duplicated batch doubles the accumulated statistics") {
  std::mt19937_64 gen(79);
  const SessionBatch b =
      Batch(RandomMatrix(6, 4, gen), {0, 1, 0, 1, 0, 1}, {0, 1});
  SessionBatch copy = b;
  copy.class_ids = {2, 3};
  const std::vector<SessionBatch> twice = {b, copy};
  const Eigen::MatrixXd w = JointSolve(twice, 1.0);
  // Expected: (2 X^T X + gamma I)^{-1} [X^T Y, X^T Y].
  const Eigen::MatrixXd gram =
      2.0 * b.x.transpose() * b.x + Eigen::MatrixXd::Identity(4, 4);
  const Eigen::MatrixXd xty = b.x.transpose() * b.y;
  Eigen::MatrixXd rhs(4, 4);
  rhs << xty, xty;
  CHECK(RelativeFrobenius(w, gram.fullPivLu().solve(rhs)) <= 1e-12);
  CHECK(RelativeFrobenius(w.leftCols(2), AlignBase(b, 1.0).weights()) > 1e-3);
}

TEST_CASE("orthogonal feature blocks decouple") {
  std::mt19937_64 gen(83);
  Eigen::MatrixXd xa = Eigen::MatrixXd::Zero(7, 6);
  Eigen::MatrixXd xb = Eigen::MatrixXd::Zero(5, 6);
  xa.leftCols(3) = RandomMatrix(7, 3, gen);
  xb.rightCols(3) = RandomMatrix(5, 3, gen);
  const SessionBatch a = Batch(xa, {0, 1, 0, 1, 0, 1, 0}, {0, 1});
  const SessionBatch b = Batch(xb, {2, 2, 3, 3, 2}, {2, 3});
  const std::vector<SessionBatch> both = {a, b};
  const Eigen::MatrixXd w = JointSolve(both, 0.5);
  const Eigen::MatrixXd wa =
      ReferenceR(xa.leftCols(3), 0.5) * xa.leftCols(3).transpose() * a.y;
  const Eigen::MatrixXd wb =
      ReferenceR(xb.rightCols(3), 0.5) * xb.rightCols(3).transpose() * b.y;
  CHECK(RelativeFrobenius(w.topLeftCorner(3, 2), wa) <= 1e-12);
  CHECK(RelativeFrobenius(w.bottomRightCorner(3, 2), wb) <= 1e-12);
  CHECK(w.bottomLeftCorner(3, 2).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(w.topRightCorner(3, 2).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("basis rows predict the matching scaled one-hot column") {
  const Eigen::MatrixXd w = Eigen::Vector3d(2.0, 0.5, 7.0).asDiagonal();
  const std::vector<int> ids = {0, 1, 2};
  CHECK(PredictWithWeights(Eigen::MatrixXd::Identity(3, 3), w, ids) ==
        std::vector<int>{0, 1, 2});
  CHECK(PredictWithWeights(Eigen::MatrixXd::Zero(1, 3), w, ids) ==
        std::vector<int>{0});
}

TEST_CASE("recursive and joint weights predict identically") {
  std::mt19937_64 gen(89);
  const auto stream = testing::RandomStream(gen, 24, 5);
  AnalyticState s = AlignBase(stream[0], 1.0);
  for (std::size_t n = 1; n < stream.size(); ++n) {
    s = UpdateWeights(s, stream[n]);
  }
  const Eigen::MatrixXd joint = JointSolve(stream, 1.0);
  const std::vector<int> order = JointClassOrder(stream);
  CHECK(order == s.seen_classes());
  for (const SessionBatch& b : stream) {
    CHECK(Predict(b.x, s) == PredictWithWeights(b.x, joint, order));
  }
}

}  // namespace
}  // namespace acgl
