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

#include "acgl/gcn.h"

#include <cmath>
#include <string>

#include "acgl/error.h"

namespace acgl {
namespace {

void CheckShapes(const NormalizedAdjacency& adj, const Eigen::MatrixXd& x,
                 const BackboneParams& params) {
  if (adj.size() != x.rows()) {
    throw ShapeError("adjacency is " + std::to_string(adj.size()) +
                     " square but features have " + std::to_string(x.rows()) +
                     " rows");
  }
  if (x.cols() != params.w0.rows()) {
    throw ShapeError("feature dim " + std::to_string(x.cols()) +
                     " != w0 rows " + std::to_string(params.w0.rows()));
  }
  if (params.w0.cols() != params.w1.rows()) {
    throw ShapeError("w0 cols " + std::to_string(params.w0.cols()) +
                     " != w1 rows " + std::to_string(params.w1.rows()));
  }
}

Eigen::MatrixXd GlorotUniform(int rows, int cols, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Eigen::MatrixXd w(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) w(i, j) = rng.Uniform(-bound, bound);
  }
  return w;
}

BackboneParams InitBackbone(int input_dim, int hidden_dim, int output_dim,
                            Rng& rng) {
  BackboneParams params;
  params.w0 = GlorotUniform(input_dim, hidden_dim, rng);
  params.w1 = GlorotUniform(hidden_dim, output_dim, rng);
  return params;
}

Eigen::MatrixXd SampleDropoutMask(Eigen::Index rows, Eigen::Index cols,
                                  double rate, Rng& rng) {
  const double keep_scale = 1.0 / (1.0 - rate);
  Eigen::MatrixXd mask(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      mask(i, j) = rng.Uniform() < rate ? 0.0 : keep_scale;
    }
  }
  return mask;
}

// Forward pass starting from a precomputed A X.
ForwardPass ForwardFromPropagated(const NormalizedAdjacency& adj,
                                  const Eigen::MatrixXd& ax,
                                  const BackboneParams& params,
                                  const Eigen::MatrixXd& dropout_mask) {
  ForwardPass out;
  out.pre_activation = ax * params.w0;
  out.hidden = out.pre_activation.cwiseMax(0.0);
  if (dropout_mask.size() > 0) {
    if (dropout_mask.rows() != out.hidden.rows() ||
        dropout_mask.cols() != out.hidden.cols()) {
      throw ShapeError("dropout mask shape does not match hidden layer");
    }
    out.hidden = out.hidden.cwiseProduct(dropout_mask);
    out.dropout_mask = dropout_mask;
  }
  out.logits = adj.matrix() * (out.hidden * params.w1);
  return out;
}

// d loss / d logits for the masked cross-entropy.
Eigen::MatrixXd LogitGradient(const LossResult& loss,
                              std::span<const int> labels,
                              const NodeMask& mask, LossReduction reduction) {
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(loss.probs.rows(),
                                               loss.probs.cols());
  double count = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i) count += mask[i] ? 1.0 : 0.0;
  const double scale = reduction == LossReduction::kMean ? 1.0 / count : 1.0;
  for (Eigen::Index i = 0; i < grad.rows(); ++i) {
    if (!mask[i]) continue;
    grad.row(i) = loss.probs.row(i) * scale;
    grad(i, labels[i]) -= scale;
  }
  return grad;
}

BackboneGradients BackwardFromPropagated(const NormalizedAdjacency& adj,
                                         const Eigen::MatrixXd& ax,
                                         const BackboneParams& params,
                                         std::span<const int> labels,
                                         const NodeMask& mask,
                                         const Eigen::MatrixXd& dropout_mask,
                                         LossReduction reduction) {
  const ForwardPass fwd = ForwardFromPropagated(adj, ax, params, dropout_mask);
  const LossResult loss =
      MaskedSoftmaxCrossEntropy(fwd.logits, labels, mask, reduction);
  const Eigen::MatrixXd g_logits = LogitGradient(loss, labels, mask, reduction);

  // logits = A H W1, so dW1 = (A H)^T G and dH = A^T G W1^T.
  const Eigen::MatrixXd a_t_g = adj.matrix().transpose() * g_logits;
  BackboneGradients grads;
  grads.loss = loss.loss;
  grads.w1 = fwd.hidden.transpose() * a_t_g;
  Eigen::MatrixXd g_hidden = a_t_g * params.w1.transpose();
  if (dropout_mask.size() > 0) g_hidden = g_hidden.cwiseProduct(dropout_mask);
  const Eigen::MatrixXd g_pre =
      (fwd.pre_activation.array() > 0.0).select(g_hidden, 0.0);
  grads.w0 = ax.transpose() * g_pre;
  return grads;
}

}  // namespace

BackboneParams InitBackbone(int input_dim, int hidden_dim, int output_dim,
                            std::uint64_t seed) {
  if (input_dim < 1 || hidden_dim < 1 || output_dim < 1) {
    throw ValidationError("backbone dimensions must be positive");
  }
  Rng rng(seed);
  return InitBackbone(input_dim, hidden_dim, output_dim, rng);
}

ForwardPass GcnForwardWithMask(const NormalizedAdjacency& adj,
                               const Eigen::MatrixXd& x,
                               const BackboneParams& params,
                               const Eigen::MatrixXd& dropout_mask) {
  CheckShapes(adj, x, params);
  const Eigen::MatrixXd ax = adj.matrix() * x;
  return ForwardFromPropagated(adj, ax, params, dropout_mask);
}

ForwardPass GcnForward(const NormalizedAdjacency& adj, const Eigen::MatrixXd& x,
                       const BackboneParams& params, double dropout_rate,
                       Rng* rng, bool training) {
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ValidationError("dropout rate must lie in [0, 1)");
  }
  CheckShapes(adj, x, params);
  Eigen::MatrixXd mask;
  if (training && dropout_rate > 0.0) {
    if (rng == nullptr) throw ValidationError("dropout requires an rng");
    mask = SampleDropoutMask(x.rows(), params.hidden_dim(), dropout_rate, *rng);
  }
  const Eigen::MatrixXd ax = adj.matrix() * x;
  return ForwardFromPropagated(adj, ax, params, mask);
}

Eigen::MatrixXd GcnEmbed(const NormalizedAdjacency& adj,
                         const Eigen::MatrixXd& x,
                         const BackboneParams& params) {
  CheckShapes(adj, x, params);
  return ((adj.matrix() * x) * params.w0).cwiseMax(0.0);
}

LossResult MaskedSoftmaxCrossEntropy(const Eigen::MatrixXd& logits,
                                     std::span<const int> labels,
                                     const NodeMask& mask,
                                     LossReduction reduction) {
  if (static_cast<Eigen::Index>(labels.size()) != logits.rows() ||
      static_cast<Eigen::Index>(mask.size()) != logits.rows()) {
    throw ShapeError("labels/mask length must equal the number of logit rows");
  }
  LossResult out;
  out.probs.resize(logits.rows(), logits.cols());
  double total = 0.0;
  int count = 0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double max = logits.row(i).maxCoeff();
    double denom = 0.0;
    for (Eigen::Index j = 0; j < logits.cols(); ++j) {
      const double e = std::exp(logits(i, j) - max);
      out.probs(i, j) = e;
      denom += e;
    }
    out.probs.row(i) /= denom;
    if (!mask[i]) continue;
    const int y = labels[i];
    if (y < 0 || y >= logits.cols()) {
      throw ValidationError("label " + std::to_string(y) + " at row " +
                            std::to_string(i) + " outside logit columns");
    }
    // log p_y = (z_y - max) - log(sum exp(z - max))
    total -= (logits(i, y) - max) - std::log(denom);
    ++count;
  }
  if (count == 0) throw ValidationError("loss mask selects no nodes");
  out.loss = reduction == LossReduction::kMean ? total / count : total;
  return out;
}

BackboneGradients GcnBackward(const NormalizedAdjacency& adj,
                              const Eigen::MatrixXd& x,
                              const BackboneParams& params,
                              std::span<const int> labels, const NodeMask& mask,
                              const Eigen::MatrixXd& dropout_mask,
                              LossReduction reduction) {
  CheckShapes(adj, x, params);
  const Eigen::MatrixXd ax = adj.matrix() * x;
  return BackwardFromPropagated(adj, ax, params, labels, mask, dropout_mask,
                                reduction);
}

OptimizerState OptimizerState::ZerosLike(const BackboneParams& params,
                                         const AdamConfig& config) {
  OptimizerState state;
  state.config = config;
  state.m0 = Eigen::MatrixXd::Zero(params.w0.rows(), params.w0.cols());
  state.v0 = state.m0;
  state.m1 = Eigen::MatrixXd::Zero(params.w1.rows(), params.w1.cols());
  state.v1 = state.m1;
  return state;
}

void AdamStep(BackboneParams& params, const BackboneGradients& grads,
              OptimizerState& state) {
  if (state.m0.rows() != params.w0.rows() ||
      state.m0.cols() != params.w0.cols() ||
      state.m1.rows() != params.w1.rows() ||
      state.m1.cols() != params.w1.cols() ||
      grads.w0.rows() != params.w0.rows() ||
      grads.w0.cols() != params.w0.cols() ||
      grads.w1.rows() != params.w1.rows() ||
      grads.w1.cols() != params.w1.cols()) {
    throw ShapeError("optimizer state or gradients do not match parameters");
  }
  const AdamConfig& c = state.config;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(c.beta1, t);
  const double bias2 = 1.0 - std::pow(c.beta2, t);

  auto update = [&](Eigen::MatrixXd& w, const Eigen::MatrixXd& g_raw,
                    Eigen::MatrixXd& m, Eigen::MatrixXd& v) {
    const Eigen::MatrixXd g = g_raw + c.weight_decay * w;
    m = c.beta1 * m + (1.0 - c.beta1) * g;
    v = c.beta2 * v + (1.0 - c.beta2) * g.cwiseProduct(g);
    const Eigen::ArrayXXd m_hat = m.array() / bias1;
    const Eigen::ArrayXXd v_hat = v.array() / bias2;
    w.array() -= c.learning_rate * m_hat / (v_hat.sqrt() + c.epsilon);
  };
  update(params.w0, grads.w0, state.m0, state.v0);
  update(params.w1, grads.w1, state.m1, state.v1);
}

BaseTrainingResult TrainBase(const Graph& graph, const SessionPlan& plan,
                             const BackboneConfig& config, std::uint64_t seed) {
  if (config.hidden_dim < 1) throw ValidationError("hidden_dim must be >= 1");
  if (config.epochs < 0) throw ValidationError("epochs must be >= 0");
  if (!(config.dropout >= 0.0 && config.dropout < 1.0)) {
    throw ValidationError("dropout must lie in [0, 1)");
  }

  const Graph base = InducedSubgraph(graph, plan.base_classes);
  std::vector<int> column_of(graph.num_classes(), -1);
  for (std::size_t j = 0; j < plan.base_classes.size(); ++j) {
    column_of[plan.base_classes[j]] = static_cast<int>(j);
  }
  std::vector<int> local_labels(base.num_nodes());
  for (int i = 0; i < base.num_nodes(); ++i) {
    local_labels[i] = column_of[base.labels()[i]];
  }
  const NodeMask train_mask = base.Mask(Split::kTrain);
  if (base.NodesIn(Split::kTrain).empty()) {
    throw ValidationError("base session has no training nodes");
  }

  Rng rng(seed);
  BaseTrainingResult result;
  result.params =
      InitBackbone(base.feature_dim(), config.hidden_dim,
                   static_cast<int>(plan.base_classes.size()), rng);

  const NormalizedAdjacency adj = NormalizeAdjacency(base);
  const Eigen::MatrixXd ax = adj.matrix() * base.features();
  AdamConfig adam;
  adam.learning_rate = config.learning_rate;
  adam.weight_decay = config.weight_decay;
  OptimizerState state = OptimizerState::ZerosLike(result.params, adam);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Eigen::MatrixXd mask;
    if (config.dropout > 0.0) {
      mask = SampleDropoutMask(base.num_nodes(), config.hidden_dim,
                               config.dropout, rng);
    }
    const BackboneGradients grads =
        BackwardFromPropagated(adj, ax, result.params, local_labels,
                               train_mask, mask, LossReduction::kMean);
    result.losses.push_back(grads.loss);
    AdamStep(result.params, grads, state);
  }

  const ForwardPass eval =
      ForwardFromPropagated(adj, ax, result.params, Eigen::MatrixXd());
  int correct = 0;
  int total = 0;
  for (int i = 0; i < base.num_nodes(); ++i) {
    if (!train_mask[i]) continue;
    Eigen::Index arg;
    eval.logits.row(i).maxCoeff(&arg);
    correct += arg == local_labels[i] ? 1 : 0;
    ++total;
  }
  result.train_accuracy = static_cast<double>(correct) / total;
  return result;
}

}  // namespace acgl
