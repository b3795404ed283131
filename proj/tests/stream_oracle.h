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

#ifndef ACGL_TESTS_STREAM_ORACLE_H_
#define ACGL_TESTS_STREAM_ORACLE_H_

#include <Eigen/QR>
#include <algorithm>
#include <random>
#include <vector>

#include "acgl/analytic.h"
#include "test_util.h"

namespace acgl::testing {

// Random class-incremental stream in classifier space. Session sizes vary
// around d so both the Woodbury and the direct update paths get used.
// Features are rectified like real expander outputs.
inline std::vector<SessionBatch> RandomStream(std::mt19937_64& gen, int d,
                                              int sessions) {
  std::vector<SessionBatch> stream;
  int next_class = 0;
  for (int s = 0; s < sessions; ++s) {
    const int classes = RandomInt(gen, 1, 3);
    const int rows = RandomInt(gen, 1, 2 * d);
    const double scale =
        std::uniform_real_distribution<double>(0.2, 3.0)(gen);
    Eigen::MatrixXd x = RandomMatrix(rows, d, gen, scale);
    if (s % 2 == 0) x = x.cwiseMax(0.0);
    std::vector<int> ids(classes);
    for (int c = 0; c < classes; ++c) ids[c] = next_class++;
    std::vector<int> labels(rows);
    for (int i = 0; i < rows; ++i) {
      labels[i] = ids[RandomInt(gen, 0, classes - 1)];
    }
    stream.push_back(MakeSessionBatch(std::move(x), labels, ids));
  }
  return stream;
}

// Ridge solution of the stacked system [X; sqrt(gamma) I] W = [Y; 0] by
// Householder QR, with block-diagonal targets. Never forms X^T X.
inline Eigen::MatrixXd QrJointSolution(std::span<const SessionBatch> batches,
                                       double gamma) {
  const Eigen::Index d = batches.front().x.cols();
  Eigen::Index rows = d;
  Eigen::Index cols = 0;
  for (const SessionBatch& b : batches) {
    rows += b.x.rows();
    cols += b.y.cols();
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, d);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  for (const SessionBatch& b : batches) {
    a.block(r, 0, b.x.rows(), d) = b.x;
    y.block(r, c, b.y.rows(), b.y.cols()) = b.y;
    r += b.x.rows();
    c += b.y.cols();
  }
  a.bottomRows(d) = std::sqrt(gamma) * Eigen::MatrixXd::Identity(d, d);
  return a.colPivHouseholderQr().solve(y);
}

struct StreamComparison {
  double max_vs_library_joint = 0.0;  // relative Frobenius
  double max_vs_qr_joint = 0.0;
};

// Runs the recursion over `stream` and compares the weights after every
// session with the joint solutions over the prefix seen so far.
inline StreamComparison CompareRecursionWithJoint(
    const std::vector<SessionBatch>& stream, double gamma,
    AutocorrelationUpdate method = AutocorrelationUpdate::kAuto) {
  StreamComparison out;
  AnalyticState state = AlignBase(stream.front(), gamma);
  for (std::size_t n = 0; n < stream.size(); ++n) {
    if (n > 0) state = UpdateWeights(state, stream[n], method);
    const std::span<const SessionBatch> prefix(stream.data(), n + 1);
    out.max_vs_library_joint =
        std::max(out.max_vs_library_joint,
                 RelativeFrobenius(state.weights(), JointSolve(prefix, gamma)));
    out.max_vs_qr_joint =
        std::max(out.max_vs_qr_joint,
                 RelativeFrobenius(state.weights(),
                                   QrJointSolution(prefix, gamma)));
  }
  return out;
}

}  // namespace acgl::testing

#endif  // ACGL_TESTS_STREAM_ORACLE_H_
