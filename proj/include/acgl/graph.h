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

#ifndef ACGL_GRAPH_H_
#define ACGL_GRAPH_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace acgl {

enum class Split : std::uint8_t { kTrain, kVal, kTest };

using NodeMask = std::vector<bool>;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Undirected node-classification graph. Immutable after construction.
//
// Edges are stored once per unordered pair as (u, v) with u < v, sorted.
// Self-loops are never stored; they are added during normalization. Every
// node carries exactly one split tag, which makes the train/val/test masks
// disjoint by construction.
class Graph {
 public:
  Graph() = default;

  // Canonicalizes `edges` (orients u < v, sorts, removes duplicates and
  // self-loops) and validates all invariants. Throws ValidationError.
  static Graph Create(int num_nodes, int num_classes,
                      std::vector<std::pair<int, int>> edges,
                      Eigen::MatrixXd features, std::vector<int> labels,
                      std::vector<Split> splits);

  int num_nodes() const { return num_nodes_; }
  int num_classes() const { return num_classes_; }
  int feature_dim() const { return static_cast<int>(features_.cols()); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const Eigen::MatrixXd& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<Split>& splits() const { return splits_; }

  NodeMask Mask(Split split) const;
  std::vector<int> NodesIn(Split split) const;

  // Classes that have at least one node, ascending.
  std::vector<int> PresentClasses() const;

  bool operator==(const Graph& other) const = default;

 private:
  int num_nodes_ = 0;
  int num_classes_ = 0;
  std::vector<std::pair<int, int>> edges_;
  Eigen::MatrixXd features_;
  std::vector<int> labels_;
  std::vector<Split> splits_;
};

// D^{-1/2} (A + I) D^{-1/2} where D_ii = sum_j (A + I)_ij.
class NormalizedAdjacency {
 public:
  NormalizedAdjacency() = default;
  explicit NormalizedAdjacency(SparseMatrix matrix);

  const SparseMatrix& matrix() const { return matrix_; }
  int size() const { return static_cast<int>(matrix_.rows()); }

 private:
  SparseMatrix matrix_;
};

NormalizedAdjacency NormalizeAdjacency(const Graph& graph);

// Copy of `graph` whose feature rows are scaled to unit L1 norm. Rows that
// sum to zero are left unchanged.
Graph RowNormalizeFeatures(const Graph& graph);

// Induced subgraph over the nodes whose label is in `classes`. Node ids are
// compacted preserving their relative order; labels stay global class ids.
// When `original_ids` is non-null it receives the parent id of each node.
// Throws ValidationError if no node matches.
Graph InducedSubgraph(const Graph& graph, std::span<const int> classes,
                      std::vector<int>* original_ids = nullptr);

// Ordered class groups for a class-incremental stream. Session 0 is the base
// session; session s > 0 holds incremental_groups[s - 1].
struct SessionPlan {
  std::vector<int> base_classes;
  std::vector<std::vector<int>> incremental_groups;
  // Parent-graph node ids whose label falls in each session's classes.
  std::vector<std::vector<int>> session_nodes;

  int num_sessions() const {
    return 1 + static_cast<int>(incremental_groups.size());
  }
  const std::vector<int>& classes(int session) const {
    return session == 0 ? base_classes : incremental_groups.at(session - 1);
  }
};

// ceil(C / 2).
int DefaultBaseClassCount(int num_classes);

// Splits `class_order` (ascending ids when empty) into a base group of
// `base_count` classes followed by groups of `group_size` (the last group may
// be smaller). Throws ValidationError on invalid sizes or a class_order that
// is not a permutation of [0, C).
SessionPlan BuildSessionPlan(const Graph& graph, int base_count, int group_size,
                             std::span<const int> class_order = {});

// Seeded permutation of [0, num_classes).
std::vector<int> ShuffledClassOrder(int num_classes, std::uint64_t seed);

}  // namespace acgl

#endif  // ACGL_GRAPH_H_
