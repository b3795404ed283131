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

#ifndef ACGL_HARNESS_H_
#define ACGL_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acgl/analytic.h"
#include "acgl/expander.h"
#include "acgl/gcn.h"
#include "acgl/graph.h"
#include "acgl/metrics.h"
#include "acgl/synthetic.h"

namespace acgl {

// Which graph past tasks are evaluated on.
enum class EvaluationGraph {
  kTaskSubgraph,  // each task's own induced subgraph
  kSeenUnion,     // induced subgraph over every class seen so far
};

// Named seeds. Unset entries are derived from `global`.
struct SeedConfig {
  std::uint64_t global = 42;
  std::optional<std::uint64_t> data;      // synthetic graph, class order
  std::optional<std::uint64_t> backbone;  // init and dropout
  std::optional<std::uint64_t> expander;  // expansion weights
};

struct ResolvedSeeds {
  std::uint64_t data;
  std::uint64_t backbone;
  std::uint64_t expander;
};

ResolvedSeeds ResolveSeeds(const SeedConfig& seeds);

struct ExperimentConfig {
  std::string dataset_path;  // empty: generate `synthetic`
  SyntheticSpec synthetic;   // its seed is replaced by the data seed
  bool row_normalize_features = false;

  int base_classes = 0;  // 0: ceil(C / 2)
  int group_size = 1;
  bool shuffle_class_order = false;

  BackboneConfig backbone;
  int expanded_dim = 2048;
  bool expander_uses_adjacency = false;
  double gamma = 1.0;

  SeedConfig seeds;
  EvaluationGraph evaluation = EvaluationGraph::kTaskSubgraph;

  // Retains every session's batch and re-solves jointly after each session
  // to fill ExperimentResult::joint_matrix. Verification only: it stores
  // past data, which the incremental path never does.
  bool verify_against_joint = false;
};

// Throws ConfigError naming the first offending field.
void ValidateExperimentConfig(const ExperimentConfig& config);

struct ExperimentResult {
  PerformanceMatrix matrix;
  std::optional<PerformanceMatrix> joint_matrix;
  // Largest relative Frobenius gap between recursive and joint weights over
  // all sessions (only with verify_against_joint).
  std::optional<double> max_joint_weight_error;
  StageTimings timings;
  AnalyticState state;
  BackboneParams backbone;
  FeatureExpander expander;
  SessionPlan plan;
  double base_train_accuracy = 0.0;
};

// Loads or generates the graph, then runs the protocol below.
ExperimentResult RunExperiment(const ExperimentConfig& config);

// Three stages: backprop training of the backbone on the base session,
// ridge alignment of the classifier on the frozen expanded features, then
// one recursive update per incremental session using only that session's
// subgraph. After each session k every task i <= k is evaluated to fill
// M[k][i].
ExperimentResult RunExperiment(const Graph& graph,
                               const ExperimentConfig& config);

// Frozen feature pipeline on `graph`: expander(relu(A X W0)).
Eigen::MatrixXd ExtractFeatures(const Graph& graph,
                                const BackboneParams& backbone,
                                const FeatureExpander& expander);

// Test accuracy of `state` on `task_graph`, predicting over all seen
// classes. Throws ValidationError when the graph has no test nodes.
double EvaluateTask(const AnalyticState& state, const BackboneParams& backbone,
                    const FeatureExpander& expander, const Graph& task_graph);

}  // namespace acgl

#endif  // ACGL_HARNESS_H_
