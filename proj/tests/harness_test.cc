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

#include "acgl/config.h"
#include "acgl/error.h"
#include "acgl/synthetic.h"
#include "doctest.h"
#include "test_util.h"

namespace acgl {
namespace {

ExperimentConfig SmallConfig() {
  ExperimentConfig c;
  c.synthetic.num_classes = 4;
  c.synthetic.nodes_per_class = 50;
  c.synthetic.feature_dim = 16;
  c.synthetic.homophily = 0.9;
  c.base_classes = 2;
  c.backbone.hidden_dim = 32;
  c.expanded_dim = 128;
  return c;
}

TEST_CASE("four-class stream fills a 3x3 lower-triangular matrix") {
  const ExperimentResult r = RunExperiment(SmallConfig());
  REQUIRE(r.matrix.num_sessions() == 3);
  CHECK(r.matrix.IsComplete());
  for (int k = 0; k < 3; ++k) {
    CAPTURE(k);
    CHECK(r.matrix.At(k, k) > 0.8);
  }
  CHECK(r.plan.base_classes == std::vector<int>{0, 1});
  CHECK(r.timings.incremental.size() == 2);
  CHECK(r.state.seen_classes() == std::vector<int>{0, 1, 2, 3});
  CHECK(r.state.feature_dim() == 128);
  CHECK(r.expander.expanded_dim() == 128);
  CHECK(r.backbone.output_dim() == 2);
}

TEST_CASE("same seeds give a bit-identical matrix") {
  const ExperimentResult a = RunExperiment(SmallConfig());
  const ExperimentResult b = RunExperiment(SmallConfig());
  CHECK(a.matrix == b.matrix);
  CHECK(a.state == b.state);
  ExperimentConfig other = SmallConfig();
  other.seeds.global = 7;
  CHECK_FALSE(RunExperiment(other).state == a.state);
}

TEST_CASE("seven classes give four sessions") {
  ExperimentConfig c = SmallConfig();
  c.synthetic.num_classes = 7;
  c.synthetic.nodes_per_class = 12;
  c.base_classes = 0;
  c.backbone.epochs = 2;
  const ExperimentResult r = RunExperiment(c);
  CHECK(r.matrix.num_sessions() == 4);
  CHECK(r.plan.base_classes == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("recursive and joint weights give identical matrices") {
  ExperimentConfig c = SmallConfig();
  c.verify_against_joint = true;
  const ExperimentResult r = RunExperiment(c);
  REQUIRE(r.joint_matrix.has_value());
  CHECK(*r.joint_matrix == r.matrix);
  CHECK(*r.max_joint_weight_error <= 1e-8);
}

TEST_CASE("group size, shuffled order and union evaluation") {
  ExperimentConfig c = SmallConfig();
  c.synthetic.num_classes = 7;
  c.synthetic.nodes_per_class = 20;
  c.base_classes = 3;
  c.group_size = 2;
  c.shuffle_class_order = true;
  c.evaluation = EvaluationGraph::kSeenUnion;
  c.backbone.epochs = 5;
  const ExperimentResult r = RunExperiment(c);
  CHECK(r.matrix.num_sessions() == 3);
  CHECK(r.plan.classes(1).size() == 2);
  CHECK(r.plan.classes(2).size() == 2);
  std::vector<int> seen = r.state.seen_classes();
  std::sort(seen.begin(), seen.end());
  CHECK(seen == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("adjacency-aware expander runs") {
  ExperimentConfig c = SmallConfig();
  c.expander_uses_adjacency = true;
  c.backbone.epochs = 5;
  const ExperimentResult r = RunExperiment(c);
  CHECK(r.expander.uses_adjacency());
  CHECK(r.matrix.IsComplete());
}

TEST_CASE("separable features reach perfect accuracy") {
  // Each class owns one feature coordinate and there are no edges.
  const int n = 40;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, 4);
  std::vector<int> labels(n);
  std::vector<Split> splits(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = i % 4;
    x(i, labels[i]) = 1.0;
    splits[i] = i < 24 ? Split::kTrain : Split::kTest;
  }
  const Graph g = Graph::Create(n, 4, {}, x, labels, splits);
  const BackboneParams backbone{Eigen::MatrixXd::Identity(4, 4),
                                Eigen::MatrixXd::Zero(4, 2)};
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 8);
  w.leftCols(4).setIdentity();
  const FeatureExpander expander(w, 0, false);

  const Eigen::MatrixXd feats = ExtractFeatures(g, backbone, expander);
  std::vector<int> train_labels;
  std::vector<int> rows;
  for (int i : g.NodesIn(Split::kTrain)) {
    rows.push_back(i);
    train_labels.push_back(labels[i]);
  }
  const SessionBatch batch =
      MakeSessionBatch(feats(rows, Eigen::all), train_labels, {0, 1, 2, 3});
  const AnalyticState state = AlignBase(batch, 1e-3);
  CHECK(EvaluateTask(state, backbone, expander, g) == 1.0);
}

TEST_CASE("random weights score near chance") {
  SyntheticSpec spec;
  spec.num_classes = 4;
  spec.nodes_per_class = 100;
  spec.train_fraction = 0.2;
  spec.val_fraction = 0.0;
  const Graph g = GenerateSynthetic(spec);
  std::mt19937_64 gen(3);
  double total = 0.0;
  for (int seed = 0; seed < 10; ++seed) {
    const BackboneParams backbone = InitBackbone(16, 8, 2, seed);
    const FeatureExpander expander(8, 32, seed);
    const AnalyticState state = AnalyticState::FromParts(
        testing::RandomMatrix(32, 4, gen), Eigen::MatrixXd::Identity(32, 32),
        1.0, {0, 1, 2, 3});
    total += EvaluateTask(state, backbone, expander, g);
  }
  // 3200 predictions over 10 runs; binomial std is about 0.008 but runs
  // are correlated through the shared graph, so allow a wide band.
  CHECK(std::abs(total / 10.0 - 0.25) < 0.1);
}

TEST_CASE("evaluating untrained classes does not throw") {
  SyntheticSpec spec;
  spec.num_classes = 4;
  const Graph g = GenerateSynthetic(spec);
  const std::vector<int> unseen = {3};
  const Graph task = InducedSubgraph(g, unseen);
  const BackboneParams backbone = InitBackbone(16, 8, 2, 0);
  const FeatureExpander expander(8, 32, 0);
  const AnalyticState state = AnalyticState::FromParts(
      Eigen::MatrixXd::Ones(32, 2), Eigen::MatrixXd::Identity(32, 32), 1.0,
      {0, 1});
  CHECK(EvaluateTask(state, backbone, expander, task) == 0.0);
}

TEST_CASE("sessions without train or test nodes are reported") {
  // Class 2 has no training node.
  std::vector<Split> splits = {Split::kTrain, Split::kTest, Split::kTrain,
                               Split::kTest,  Split::kTest, Split::kTest};
  const Graph g = Graph::Create(6, 3, {}, Eigen::MatrixXd::Ones(6, 2),
                                {0, 0, 1, 1, 2, 2}, splits);
  ExperimentConfig c;
  c.base_classes = 2;
  c.backbone.hidden_dim = 2;
  c.backbone.epochs = 1;
  c.expanded_dim = 4;
  try {
    RunExperiment(g, c);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("session 1") != std::string::npos);
  }
}

TEST_CASE("plans that do not fit the graph are config errors") {
  ExperimentConfig c = SmallConfig();
  c.base_classes = 4;
  CHECK_THROWS_AS(RunExperiment(c), ConfigError);
  c.base_classes = 2;
  c.group_size = 3;
  CHECK_THROWS_AS(RunExperiment(c), ConfigError);
}

TEST_CASE("on-disk dataset path") {
  ExperimentConfig c = SmallConfig();
  c.dataset_path = (testing::DataDir() / "tiny").string();
  c.base_classes = 0;
  c.backbone.epochs = 3;
  const ExperimentResult r = RunExperiment(c);
  CHECK(r.matrix.num_sessions() == 3);
}

}  // namespace
}  // namespace acgl
