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

#include "acgl/harness.h"

#include <chrono>
#include <cmath>
#include <string>

#include "acgl/dataset_io.h"
#include "acgl/error.h"
#include "acgl/random.h"

namespace acgl {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Expanded test features of one task, cached when the task is introduced.
struct TaskTestSet {
  Eigen::MatrixXd features;
  std::vector<int> labels;
};

double Accuracy(const std::vector<int>& predicted,
                const std::vector<int>& labels) {
  if (labels.empty()) throw ValidationError("empty test set");
  int correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    correct += predicted[i] == labels[i] ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

Eigen::MatrixXd SelectRows(const Eigen::MatrixXd& m,
                           const std::vector<int>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
  }
  return out;
}

std::string ClassList(const std::vector<int>& classes) {
  std::string s = "{";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(classes[i]);
  }
  return s + "}";
}

// Test sets for tasks 0..session evaluated on the union of their classes.
std::vector<TaskTestSet> UnionTestSets(const Graph& graph,
                                       const SessionPlan& plan, int session,
                                       const BackboneParams& backbone,
                                       const FeatureExpander& expander) {
  std::vector<int> seen;
  std::vector<int> task_of_class(graph.num_classes(), -1);
  for (int s = 0; s <= session; ++s) {
    for (int c : plan.classes(s)) {
      seen.push_back(c);
      task_of_class[c] = s;
    }
  }
  const Graph sub = InducedSubgraph(graph, seen);
  const Eigen::MatrixXd features = ExtractFeatures(sub, backbone, expander);
  std::vector<std::vector<int>> rows(session + 1);
  for (int node : sub.NodesIn(Split::kTest)) {
    rows[task_of_class[sub.labels()[node]]].push_back(node);
  }
  std::vector<TaskTestSet> out(session + 1);
  for (int s = 0; s <= session; ++s) {
    out[s].features = SelectRows(features, rows[s]);
    for (int node : rows[s]) out[s].labels.push_back(sub.labels()[node]);
  }
  return out;
}

}  // namespace

ResolvedSeeds ResolveSeeds(const SeedConfig& seeds) {
  return {seeds.data.value_or(MixSeed(seeds.global, 0)),
          seeds.backbone.value_or(MixSeed(seeds.global, 1)),
          seeds.expander.value_or(MixSeed(seeds.global, 2))};
}

void ValidateExperimentConfig(const ExperimentConfig& config) {
  if (config.dataset_path.empty()) {
    try {
      ValidateSyntheticSpec(config.synthetic);
    } catch (const ValidationError& e) {
      throw ConfigError("synthetic", e.what());
    }
  }
  if (config.base_classes < 0) {
    throw ConfigError("plan.base_classes", "must be >= 0 (0 selects ceil(C/2))");
  }
  if (config.group_size < 1) {
    throw ConfigError("plan.group_size", "must be >= 1");
  }
  const BackboneConfig& b = config.backbone;
  if (b.hidden_dim < 1) throw ConfigError("backbone.hidden_dim", "must be >= 1");
  if (b.epochs < 0) throw ConfigError("backbone.epochs", "must be >= 0");
  if (!(b.learning_rate > 0.0) || !std::isfinite(b.learning_rate)) {
    throw ConfigError("backbone.lr", "must be a finite positive number");
  }
  if (!(b.dropout >= 0.0 && b.dropout < 1.0)) {
    throw ConfigError("backbone.dropout", "must lie in [0, 1)");
  }
  if (!(b.weight_decay >= 0.0) || !std::isfinite(b.weight_decay)) {
    throw ConfigError("backbone.weight_decay", "must be >= 0");
  }
  if (config.expanded_dim <= b.hidden_dim) {
    throw ConfigError("expander.dim", "must exceed backbone.hidden_dim (" +
                                          std::to_string(b.hidden_dim) + ")");
  }
  if (!(config.gamma > 0.0) || !std::isfinite(config.gamma)) {
    throw ConfigError("analytic.gamma", "must be a finite positive number");
  }
}

Eigen::MatrixXd ExtractFeatures(const Graph& graph,
                                const BackboneParams& backbone,
                                const FeatureExpander& expander) {
  const NormalizedAdjacency adj = NormalizeAdjacency(graph);
  const Eigen::MatrixXd hidden = GcnEmbed(adj, graph.features(), backbone);
  return expander.Expand(hidden, &adj);
}

double EvaluateTask(const AnalyticState& state, const BackboneParams& backbone,
                    const FeatureExpander& expander, const Graph& task_graph) {
  const std::vector<int> test_nodes = task_graph.NodesIn(Split::kTest);
  if (test_nodes.empty()) throw ValidationError("task has no test nodes");
  const Eigen::MatrixXd features =
      ExtractFeatures(task_graph, backbone, expander);
  std::vector<int> labels;
  for (int node : test_nodes) labels.push_back(task_graph.labels()[node]);
  return Accuracy(Predict(SelectRows(features, test_nodes), state), labels);
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  ValidateExperimentConfig(config);
  const ResolvedSeeds seeds = ResolveSeeds(config.seeds);
  if (!config.dataset_path.empty()) {
    return RunExperiment(LoadDataset(config.dataset_path), config);
  }
  SyntheticSpec spec = config.synthetic;
  spec.seed = seeds.data;
  return RunExperiment(GenerateSynthetic(spec), config);
}

ExperimentResult RunExperiment(const Graph& input,
                               const ExperimentConfig& config) {
  ValidateExperimentConfig(config);
  const ResolvedSeeds seeds = ResolveSeeds(config.seeds);
  const Graph graph =
      config.row_normalize_features ? RowNormalizeFeatures(input) : input;

  const int num_classes = graph.num_classes();
  const int base_count = config.base_classes > 0
                             ? config.base_classes
                             : DefaultBaseClassCount(num_classes);
  if (base_count >= num_classes) {
    throw ConfigError("plan.base_classes",
                      "must be below the class count " +
                          std::to_string(num_classes));
  }
  if (config.group_size > num_classes - base_count) {
    throw ConfigError("plan.group_size",
                      "must be at most " + std::to_string(num_classes - base_count));
  }
  std::vector<int> order;
  if (config.shuffle_class_order) {
    order = ShuffledClassOrder(num_classes, MixSeed(seeds.data, 1));
  }

  ExperimentResult result;
  result.plan = BuildSessionPlan(graph, base_count, config.group_size, order);
  const SessionPlan& plan = result.plan;
  const int sessions = plan.num_sessions();
  result.matrix = PerformanceMatrix(sessions);
  if (config.verify_against_joint) {
    result.joint_matrix = PerformanceMatrix(sessions);
    result.max_joint_weight_error = 0.0;
  }

  auto start = Clock::now();
  BaseTrainingResult base =
      TrainBase(graph, plan, config.backbone, seeds.backbone);
  result.timings.base_training = SecondsSince(start);
  result.base_train_accuracy = base.train_accuracy;
  result.backbone = std::move(base.params);
  result.expander = FeatureExpander(config.backbone.hidden_dim,
                                    config.expanded_dim, seeds.expander,
                                    config.expander_uses_adjacency);

  std::vector<TaskTestSet> task_tests(sessions);
  std::vector<SessionBatch> retained;

  for (int s = 0; s < sessions; ++s) {
    start = Clock::now();
    SessionBatch batch;
    {
      // Only this session's subgraph is visible while learning it.
      const Graph session_graph = InducedSubgraph(graph, plan.classes(s));
      const Eigen::MatrixXd features =
          ExtractFeatures(session_graph, result.backbone, result.expander);
      const std::vector<int> train = session_graph.NodesIn(Split::kTrain);
      const std::vector<int> test = session_graph.NodesIn(Split::kTest);
      if (train.empty()) {
        throw ValidationError("session " + std::to_string(s) + " (classes " +
                              ClassList(plan.classes(s)) +
                              ") has no training nodes");
      }
      if (test.empty()) {
        throw ValidationError("session " + std::to_string(s) + " (classes " +
                              ClassList(plan.classes(s)) +
                              ") has no test nodes");
      }
      std::vector<int> train_labels;
      for (int node : train) train_labels.push_back(session_graph.labels()[node]);
      batch = MakeSessionBatch(SelectRows(features, train), train_labels,
                               plan.classes(s));
      task_tests[s].features = SelectRows(features, test);
      for (int node : test) {
        task_tests[s].labels.push_back(session_graph.labels()[node]);
      }
    }
    if (s == 0) {
      result.state = AlignBase(batch, config.gamma);
      result.timings.alignment = SecondsSince(start);
    } else {
      result.state = UpdateWeights(result.state, batch);
      result.timings.incremental.push_back(SecondsSince(start));
    }

    start = Clock::now();
    std::optional<Eigen::MatrixXd> joint_weights;
    std::vector<int> joint_classes;
    if (config.verify_against_joint) {
      retained.push_back(std::move(batch));
      joint_weights = JointSolve(retained, config.gamma);
      joint_classes = JointClassOrder(retained);
      const double err = (result.state.weights() - *joint_weights).norm() /
                         joint_weights->norm();
      result.max_joint_weight_error =
          std::max(*result.max_joint_weight_error, err);
    }
    const std::vector<TaskTestSet> union_tests =
        config.evaluation == EvaluationGraph::kSeenUnion
            ? UnionTestSets(graph, plan, s, result.backbone, result.expander)
            : std::vector<TaskTestSet>();
    for (int i = 0; i <= s; ++i) {
      const TaskTestSet& t =
          config.evaluation == EvaluationGraph::kSeenUnion ? union_tests[i]
                                                           : task_tests[i];
      result.matrix.Set(s, i,
                        Accuracy(Predict(t.features, result.state), t.labels));
      if (joint_weights) {
        result.joint_matrix->Set(
            s, i,
            Accuracy(PredictWithWeights(t.features, *joint_weights,
                                        joint_classes),
                     t.labels));
      }
    }
    result.timings.evaluation += SecondsSince(start);
  }
  return result;
}

}  // namespace acgl
