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

#ifndef ACGL_GCN_H_
#define ACGL_GCN_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "acgl/graph.h"
#include "acgl/random.h"

namespace acgl {

// Two-layer GCN weights: input -> hidden (w0) and hidden -> base classes (w1).
struct BackboneParams {
  Eigen::MatrixXd w0;  // d x h
  Eigen::MatrixXd w1;  // h x C0

  int input_dim() const { return static_cast<int>(w0.rows()); }
  int hidden_dim() const { return static_cast<int>(w0.cols()); }
  int output_dim() const { return static_cast<int>(w1.cols()); }

  bool operator==(const BackboneParams&) const = default;
};

// Glorot-uniform initialization, w0 drawn before w1.
BackboneParams InitBackbone(int input_dim, int hidden_dim, int output_dim,
                            std::uint64_t seed);

struct ForwardPass {
  Eigen::MatrixXd pre_activation;  // A X W0
  Eigen::MatrixXd hidden;          // relu(A X W0), dropout applied if training
  Eigen::MatrixXd dropout_mask;    // 0 or 1/(1-p) per entry; empty in inference
  Eigen::MatrixXd logits;          // A hidden W1
};

// hidden = relu(A X W0) with inverted dropout in training mode only, and
// logits = A hidden W1. `rng` may be null when not training or when
// dropout_rate is zero. Throws ShapeError.
ForwardPass GcnForward(const NormalizedAdjacency& adj, const Eigen::MatrixXd& x,
                       const BackboneParams& params, double dropout_rate,
                       Rng* rng, bool training);

// Same as GcnForward but with a caller-supplied dropout mask (N x h). An
// empty mask means no dropout.
ForwardPass GcnForwardWithMask(const NormalizedAdjacency& adj,
                               const Eigen::MatrixXd& x,
                               const BackboneParams& params,
                               const Eigen::MatrixXd& dropout_mask);

// relu(A X W0) without dropout; the representation fed to the expander.
Eigen::MatrixXd GcnEmbed(const NormalizedAdjacency& adj,
                         const Eigen::MatrixXd& x,
                         const BackboneParams& params);

enum class LossReduction { kMean, kSum };

struct LossResult {
  double loss = 0.0;
  Eigen::MatrixXd probs;  // row-wise softmax of every row, masked or not
};

// -(1/|mask|) sum_{i in mask} log softmax(logits_i)[labels_i], with the
// max-subtraction trick. `labels` index logits columns. Throws
// ValidationError on an empty mask or an out-of-range label.
LossResult MaskedSoftmaxCrossEntropy(const Eigen::MatrixXd& logits,
                                     std::span<const int> labels,
                                     const NodeMask& mask,
                                     LossReduction reduction =
                                         LossReduction::kMean);

struct BackboneGradients {
  Eigen::MatrixXd w0;
  Eigen::MatrixXd w1;
  double loss = 0.0;
};

// Exact gradients of the masked cross-entropy w.r.t. w0 and w1 given the
// dropout mask used in the paired forward pass. relu'(0) is taken as 0.
BackboneGradients GcnBackward(const NormalizedAdjacency& adj,
                              const Eigen::MatrixXd& x,
                              const BackboneParams& params,
                              std::span<const int> labels, const NodeMask& mask,
                              const Eigen::MatrixXd& dropout_mask,
                              LossReduction reduction = LossReduction::kMean);

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 5e-4;
};

struct OptimizerState {
  AdamConfig config;
  Eigen::MatrixXd m0, v0;  // moments for w0
  Eigen::MatrixXd m1, v1;  // moments for w1
  std::int64_t step = 0;

  static OptimizerState ZerosLike(const BackboneParams& params,
                                  const AdamConfig& config);
};

// One bias-corrected Adam step. Weight decay is added to the gradient
// (L2 coupled to the loss), not decoupled.
void AdamStep(BackboneParams& params, const BackboneGradients& grads,
              OptimizerState& state);

struct BackboneConfig {
  int hidden_dim = 256;
  int epochs = 50;
  double learning_rate = 1e-3;
  double dropout = 0.5;
  double weight_decay = 5e-4;
};

struct BaseTrainingResult {
  BackboneParams params;
  std::vector<double> losses;  // training loss before each epoch's update
  double train_accuracy = 0.0;  // inference-mode accuracy after training
};

// Full-batch training on the induced subgraph of the plan's base classes.
// Output column j of w1 corresponds to plan.base_classes[j]. Dropout masks
// and initialization both come from `seed`.
BaseTrainingResult TrainBase(const Graph& graph, const SessionPlan& plan,
                             const BackboneConfig& config, std::uint64_t seed);

}  // namespace acgl

#endif  // ACGL_GCN_H_
