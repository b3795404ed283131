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

#ifndef ACGL_ANALYTIC_H_
#define ACGL_ANALYTIC_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace acgl {

// Training data of one session in classifier space: expanded features and
// one-hot targets over the classes first introduced by this session.
struct SessionBatch {
  Eigen::MatrixXd x;            // N_n x d_feg
  Eigen::MatrixXd y;            // N_n x C_new, one-hot rows
  std::vector<int> class_ids;   // column j of y is class_ids[j]
};

// Builds the one-hot target matrix from global labels. Throws
// ValidationError if a label is not in `class_ids` or ids repeat.
SessionBatch MakeSessionBatch(Eigen::MatrixXd x, std::span<const int> labels,
                              std::vector<int> class_ids);

// Checks shapes, one-hot rows and unique class ids.
void ValidateSessionBatch(const SessionBatch& batch);

enum class AutocorrelationUpdate {
  kAuto,      // Woodbury when N_n < d_feg, direct otherwise
  kWoodbury,  // R - R X^T (I + X R X^T)^{-1} X R, inner solve is N_n x N_n
  kDirect,    // (R^{-1} + X^T X)^{-1}, both inverses through Cholesky
};

// Classifier memory carried across sessions:
//
//   R = (sum_i X_i^T X_i + gamma I)^{-1}      (d_feg x d_feg)
//   W = R [X_0^T Y_0, ..., X_n^T Y_n]         (d_feg x C_seen)
//
// Nothing else about past sessions is retained, so the footprint is
// d_feg^2 + d_feg * C_seen reals regardless of how many samples were seen.
class AnalyticState {
 public:
  AnalyticState() = default;

  // Reassembles a state from stored parts. Validates shapes, gamma > 0 and
  // symmetry of R.
  static AnalyticState FromParts(Eigen::MatrixXd weights,
                                 Eigen::MatrixXd autocorrelation, double gamma,
                                 std::vector<int> seen_classes);

  const Eigen::MatrixXd& weights() const { return weights_; }
  const Eigen::MatrixXd& autocorrelation() const { return autocorrelation_; }
  double gamma() const { return gamma_; }
  const std::vector<int>& seen_classes() const { return seen_classes_; }
  int feature_dim() const { return static_cast<int>(weights_.rows()); }
  int num_seen_classes() const { return static_cast<int>(weights_.cols()); }

  // Number of reals held by the state (W plus R).
  std::size_t StoredScalarCount() const {
    return static_cast<std::size_t>(weights_.size() + autocorrelation_.size());
  }

  bool operator==(const AnalyticState&) const = default;

 private:
  friend AnalyticState AlignBase(const SessionBatch&, double);
  friend AnalyticState UpdateWeights(const AnalyticState&, const SessionBatch&,
                                     AutocorrelationUpdate);

  Eigen::MatrixXd weights_;
  Eigen::MatrixXd autocorrelation_;
  double gamma_ = 0.0;
  std::vector<int> seen_classes_;
};

// Ridge solution on the base session: solves (X^T X + gamma I) W = X^T Y by
// Cholesky and materializes R = (X^T X + gamma I)^{-1}. Throws
// ValidationError when gamma <= 0.
AnalyticState AlignBase(const SessionBatch& base, double gamma);

// R_n from R_{n-1} and the new session's features. The result is
// symmetrized. Throws NumericalError if a factorization fails.
Eigen::MatrixXd UpdateAutocorrelation(
    const Eigen::MatrixXd& r_prev, const Eigen::MatrixXd& x,
    AutocorrelationUpdate method = AutocorrelationUpdate::kAuto);

// One incremental session:
//
//   R_n = update(R_{n-1}, X_n)
//   W_n = [W_{n-1} - R_n X_n^T X_n W_{n-1},  R_n X_n^T Y_n]
//
// Existing columns are corrected, one column per new class is appended.
// Throws ValidationError if a class in the batch was already seen.
AnalyticState UpdateWeights(
    const AnalyticState& state, const SessionBatch& batch,
    AutocorrelationUpdate method = AutocorrelationUpdate::kAuto);

// Ridge regression over all sessions at once, with block-diagonal targets
// (each session's one-hot block in its own columns, in batch order). This
// is the reference the recursion must reproduce.
Eigen::MatrixXd JointSolve(std::span<const SessionBatch> batches, double gamma);

// Class ids of the joint solution's columns, in order.
std::vector<int> JointClassOrder(std::span<const SessionBatch> batches);

// argmax_j (x W)_j mapped through `class_ids`. Ties go to the lowest class
// id, so an all-zero row predicts min(class_ids).
std::vector<int> PredictWithWeights(const Eigen::MatrixXd& x,
                                    const Eigen::MatrixXd& weights,
                                    std::span<const int> class_ids);

std::vector<int> Predict(const Eigen::MatrixXd& x, const AnalyticState& state);

}  // namespace acgl

#endif  // ACGL_ANALYTIC_H_
