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

#include <algorithm>
#include <cmath>
#include <string>

#include "acgl/error.h"

namespace acgl {
namespace {

void CheckGamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("gamma must be a finite positive number, got " +
                          std::to_string(gamma));
  }
}

void Symmetrize(Eigen::MatrixXd& m) {
  m = 0.5 * (m + m.transpose()).eval();
}

// Inverse of a symmetric positive definite matrix through Cholesky.
Eigen::MatrixXd SpdInverse(const Eigen::MatrixXd& a, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericalError(std::string(what) + " is not positive definite");
  }
  Eigen::MatrixXd inv =
      llt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
  Symmetrize(inv);
  return inv;
}

Eigen::MatrixXd RegularizedGram(const Eigen::MatrixXd& x, double gamma) {
  Eigen::MatrixXd gram = Eigen::MatrixXd::Identity(x.cols(), x.cols()) * gamma;
  gram.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
  return gram.selfadjointView<Eigen::Lower>();
}

}  // namespace

SessionBatch MakeSessionBatch(Eigen::MatrixXd x, std::span<const int> labels,
                              std::vector<int> class_ids) {
  if (static_cast<Eigen::Index>(labels.size()) != x.rows()) {
    throw ShapeError("label count " + std::to_string(labels.size()) +
                     " != feature rows " + std::to_string(x.rows()));
  }
  SessionBatch batch;
  batch.y = Eigen::MatrixXd::Zero(x.rows(), static_cast<Eigen::Index>(class_ids.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto it = std::find(class_ids.begin(), class_ids.end(), labels[i]);
    if (it == class_ids.end()) {
      throw ValidationError("label " + std::to_string(labels[i]) +
                            " is not one of the session's classes");
    }
    batch.y(static_cast<Eigen::Index>(i), it - class_ids.begin()) = 1.0;
  }
  batch.x = std::move(x);
  batch.class_ids = std::move(class_ids);
  ValidateSessionBatch(batch);
  return batch;
}

void ValidateSessionBatch(const SessionBatch& batch) {
  if (batch.x.rows() != batch.y.rows()) {
    throw ShapeError("batch x has " + std::to_string(batch.x.rows()) +
                     " rows but y has " + std::to_string(batch.y.rows()));
  }
  if (batch.y.cols() != static_cast<Eigen::Index>(batch.class_ids.size())) {
    throw ShapeError("batch y columns do not match class_ids");
  }
  std::vector<int> ids = batch.class_ids;
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw ValidationError("batch class ids repeat");
  }
  for (Eigen::Index i = 0; i < batch.y.rows(); ++i) {
    int ones = 0;
    for (Eigen::Index j = 0; j < batch.y.cols(); ++j) {
      const double v = batch.y(i, j);
      if (v == 1.0) {
        ++ones;
      } else if (v != 0.0) {
        throw ValidationError("target row " + std::to_string(i) +
                              " is not one-hot");
      }
    }
    if (ones != 1) {
      throw ValidationError("target row " + std::to_string(i) +
                            " is not one-hot");
    }
  }
}

AnalyticState AnalyticState::FromParts(Eigen::MatrixXd weights,
                                       Eigen::MatrixXd autocorrelation,
                                       double gamma,
                                       std::vector<int> seen_classes) {
  CheckGamma(gamma);
  if (autocorrelation.rows() != autocorrelation.cols() ||
      autocorrelation.rows() != weights.rows()) {
    throw ShapeError("R must be d x d with d = rows of W");
  }
  if (weights.cols() != static_cast<Eigen::Index>(seen_classes.size())) {
    throw ShapeError("W columns must match seen classes");
  }
  if (!autocorrelation.isApprox(autocorrelation.transpose(), 1e-10) &&
      autocorrelation.size() > 0) {
    throw ValidationError("R is not symmetric");
  }
  AnalyticState state;
  state.weights_ = std::move(weights);
  state.autocorrelation_ = std::move(autocorrelation);
  state.gamma_ = gamma;
  state.seen_classes_ = std::move(seen_classes);
  return state;
}

AnalyticState AlignBase(const SessionBatch& base, double gamma) {
  CheckGamma(gamma);
  ValidateSessionBatch(base);
  const Eigen::MatrixXd gram = RegularizedGram(base.x, gamma);
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("X^T X + gamma I is not positive definite");
  }
  AnalyticState state;
  state.weights_ = llt.solve(base.x.transpose() * base.y);
  state.autocorrelation_ =
      llt.solve(Eigen::MatrixXd::Identity(gram.rows(), gram.cols()));
  Symmetrize(state.autocorrelation_);
  state.gamma_ = gamma;
  state.seen_classes_ = base.class_ids;
  return state;
}

Eigen::MatrixXd UpdateAutocorrelation(const Eigen::MatrixXd& r_prev,
                                      const Eigen::MatrixXd& x,
                                      AutocorrelationUpdate method) {
  if (r_prev.rows() != r_prev.cols() || x.cols() != r_prev.rows()) {
    throw ShapeError("features have " + std::to_string(x.cols()) +
                     " columns but R is " + std::to_string(r_prev.rows()) +
                     " x " + std::to_string(r_prev.cols()));
  }
  if (x.rows() == 0) return r_prev;
  if (method == AutocorrelationUpdate::kAuto) {
    method = x.rows() < x.cols() ? AutocorrelationUpdate::kWoodbury
                                 : AutocorrelationUpdate::kDirect;
  }

  if (method == AutocorrelationUpdate::kDirect) {
    Eigen::MatrixXd precision = SpdInverse(r_prev, "R");
    precision.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
    return SpdInverse(precision.selfadjointView<Eigen::Lower>(),
                      "R^{-1} + X^T X");
  }

  const Eigen::MatrixXd r_xt = r_prev * x.transpose();  // d x N
  Eigen::MatrixXd inner = x * r_xt;                     // N x N
  inner.diagonal().array() += 1.0;
  Symmetrize(inner);
  Eigen::LLT<Eigen::MatrixXd> llt(inner);
  if (llt.info() != Eigen::Success) {
    throw NumericalError(
        "I + X R X^T is numerically singular; input is ill-conditioned");
  }
  Eigen::MatrixXd r_next = r_prev - r_xt * llt.solve(r_xt.transpose());
  Symmetrize(r_next);
  return r_next;
}

AnalyticState UpdateWeights(const AnalyticState& state,
                            const SessionBatch& batch,
                            AutocorrelationUpdate method) {
  ValidateSessionBatch(batch);
  if (batch.x.cols() != state.feature_dim()) {
    throw ShapeError("session features have " + std::to_string(batch.x.cols()) +
                     " columns, classifier expects " +
                     std::to_string(state.feature_dim()));
  }
  for (int c : batch.class_ids) {
    if (std::find(state.seen_classes_.begin(), state.seen_classes_.end(), c) !=
        state.seen_classes_.end()) {
      throw ValidationError("class " + std::to_string(c) +
                            " was already learned in an earlier session");
    }
  }

  AnalyticState next;
  next.gamma_ = state.gamma_;
  next.autocorrelation_ =
      UpdateAutocorrelation(state.autocorrelation_, batch.x, method);

  const Eigen::MatrixXd gain = next.autocorrelation_ * batch.x.transpose();
  const Eigen::Index old_cols = state.weights_.cols();
  const Eigen::Index new_cols = batch.y.cols();
  next.weights_.resize(state.weights_.rows(), old_cols + new_cols);
  next.weights_.leftCols(old_cols) =
      state.weights_ - gain * (batch.x * state.weights_);
  next.weights_.rightCols(new_cols) = gain * batch.y;

  next.seen_classes_ = state.seen_classes_;
  next.seen_classes_.insert(next.seen_classes_.end(), batch.class_ids.begin(),
                            batch.class_ids.end());
  return next;
}

std::vector<int> JointClassOrder(std::span<const SessionBatch> batches) {
  std::vector<int> order;
  for (const SessionBatch& b : batches) {
    order.insert(order.end(), b.class_ids.begin(), b.class_ids.end());
  }
  return order;
}

Eigen::MatrixXd JointSolve(std::span<const SessionBatch> batches,
                           double gamma) {
  CheckGamma(gamma);
  if (batches.empty()) throw ValidationError("joint solve needs a batch");
  const Eigen::Index d = batches.front().x.cols();
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  for (const SessionBatch& b : batches) {
    ValidateSessionBatch(b);
    if (b.x.cols() != d) throw ShapeError("batches disagree on feature dim");
    rows += b.x.rows();
    cols += b.y.cols();
  }
  std::vector<int> ids = JointClassOrder(batches);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw ValidationError("class appears in more than one batch");
  }

  // Stack every session into one design matrix with block-diagonal targets.
  Eigen::MatrixXd x(rows, d);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  for (const SessionBatch& b : batches) {
    x.middleRows(r, b.x.rows()) = b.x;
    y.block(r, c, b.y.rows(), b.y.cols()) = b.y;
    r += b.x.rows();
    c += b.y.cols();
  }

  Eigen::MatrixXd gram = x.transpose() * x;
  gram.diagonal().array() += gamma;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("joint Gram matrix is not positive definite");
  }
  return llt.solve(x.transpose() * y);
}

std::vector<int> PredictWithWeights(const Eigen::MatrixXd& x,
                                    const Eigen::MatrixXd& weights,
                                    std::span<const int> class_ids) {
  if (x.cols() != weights.rows()) {
    throw ShapeError("features have " + std::to_string(x.cols()) +
                     " columns, weights expect " +
                     std::to_string(weights.rows()));
  }
  if (weights.cols() != static_cast<Eigen::Index>(class_ids.size())) {
    throw ShapeError("weight columns do not match class ids");
  }
  if (class_ids.empty()) throw ValidationError("no classes to predict");
  const Eigen::MatrixXd scores = x * weights;
  std::vector<int> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < scores.cols(); ++j) {
      const double s = scores(i, j);
      const double b = scores(i, best);
      if (s > b || (s == b && class_ids[j] < class_ids[best])) best = j;
    }
    out[static_cast<std::size_t>(i)] = class_ids[best];
  }
  return out;
}

std::vector<int> Predict(const Eigen::MatrixXd& x, const AnalyticState& state) {
  return PredictWithWeights(x, state.weights(), state.seen_classes());
}

}  // namespace acgl
