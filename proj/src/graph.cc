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

#include "acgl/graph.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "acgl/error.h"
#include "acgl/random.h"

namespace acgl {

Graph Graph::Create(int num_nodes, int num_classes,
                    std::vector<std::pair<int, int>> edges,
                    Eigen::MatrixXd features, std::vector<int> labels,
                    std::vector<Split> splits) {
  if (num_nodes < 0) throw ValidationError("negative node count");
  if (num_classes < 1) throw ValidationError("graph needs at least one class");
  if (features.rows() != num_nodes) {
    throw ShapeError("feature matrix has " + std::to_string(features.rows()) +
                     " rows, expected " + std::to_string(num_nodes));
  }
  if (static_cast<int>(labels.size()) != num_nodes) {
    throw ShapeError("label vector length " + std::to_string(labels.size()) +
                     " != node count " + std::to_string(num_nodes));
  }
  if (static_cast<int>(splits.size()) != num_nodes) {
    throw ShapeError("split vector length " + std::to_string(splits.size()) +
                     " != node count " + std::to_string(num_nodes));
  }
  for (int i = 0; i < num_nodes; ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw ValidationError("node " + std::to_string(i) + " has label " +
                            std::to_string(labels[i]) + " outside [0, " +
                            std::to_string(num_classes) + ")");
    }
  }
  if (!features.allFinite()) {
    throw ValidationError("feature matrix has non-finite entries");
  }

  std::vector<std::pair<int, int>> canonical;
  canonical.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
      throw ValidationError("edge (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") references a node outside [0, " +
                            std::to_string(num_nodes) + ")");
    }
    if (u == v) continue;
    canonical.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canonical.begin(), canonical.end());
  canonical.erase(std::unique(canonical.begin(), canonical.end()),
                  canonical.end());

  Graph g;
  g.num_nodes_ = num_nodes;
  g.num_classes_ = num_classes;
  g.edges_ = std::move(canonical);
  g.features_ = std::move(features);
  g.labels_ = std::move(labels);
  g.splits_ = std::move(splits);
  return g;
}

NodeMask Graph::Mask(Split split) const {
  NodeMask mask(num_nodes_);
  for (int i = 0; i < num_nodes_; ++i) mask[i] = splits_[i] == split;
  return mask;
}

std::vector<int> Graph::NodesIn(Split split) const {
  std::vector<int> nodes;
  for (int i = 0; i < num_nodes_; ++i) {
    if (splits_[i] == split) nodes.push_back(i);
  }
  return nodes;
}

std::vector<int> Graph::PresentClasses() const {
  std::vector<bool> seen(num_classes_, false);
  for (int label : labels_) seen[label] = true;
  std::vector<int> out;
  for (int c = 0; c < num_classes_; ++c) {
    if (seen[c]) out.push_back(c);
  }
  return out;
}

NormalizedAdjacency::NormalizedAdjacency(SparseMatrix matrix)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw ShapeError("adjacency must be square");
  }
  matrix_.makeCompressed();
}

NormalizedAdjacency NormalizeAdjacency(const Graph& graph) {
  const int n = graph.num_nodes();
  std::vector<double> degree(n, 1.0);
  for (auto [u, v] : graph.edges()) {
    degree[u] += 1.0;
    degree[v] += 1.0;
  }
  std::vector<double> inv_sqrt(n);
  for (int i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(degree[i]);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(n + 2 * graph.num_edges());
  for (int i = 0; i < n; ++i) {
    triplets.emplace_back(i, i, inv_sqrt[i] * inv_sqrt[i]);
  }
  for (auto [u, v] : graph.edges()) {
    const double w = inv_sqrt[u] * inv_sqrt[v];
    triplets.emplace_back(u, v, w);
    triplets.emplace_back(v, u, w);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return NormalizedAdjacency(std::move(m));
}

Graph RowNormalizeFeatures(const Graph& graph) {
  Eigen::MatrixXd features = graph.features();
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    const double sum = features.row(i).cwiseAbs().sum();
    if (sum > 0.0) features.row(i) /= sum;
  }
  return Graph::Create(graph.num_nodes(), graph.num_classes(), graph.edges(),
                       std::move(features), graph.labels(), graph.splits());
}

Graph InducedSubgraph(const Graph& graph, std::span<const int> classes,
                      std::vector<int>* original_ids) {
  if (classes.empty()) throw ValidationError("empty class set");
  std::vector<bool> wanted(graph.num_classes(), false);
  for (int c : classes) {
    if (c < 0 || c >= graph.num_classes()) {
      throw ValidationError("class " + std::to_string(c) + " out of range");
    }
    wanted[c] = true;
  }

  std::vector<int> new_id(graph.num_nodes(), -1);
  std::vector<int> kept;
  for (int i = 0; i < graph.num_nodes(); ++i) {
    if (wanted[graph.labels()[i]]) {
      new_id[i] = static_cast<int>(kept.size());
      kept.push_back(i);
    }
  }
  if (kept.empty()) {
    throw ValidationError("class set induces an empty node set");
  }

  const int n = static_cast<int>(kept.size());
  Eigen::MatrixXd features(n, graph.feature_dim());
  std::vector<int> labels(n);
  std::vector<Split> splits(n);
  for (int j = 0; j < n; ++j) {
    features.row(j) = graph.features().row(kept[j]);
    labels[j] = graph.labels()[kept[j]];
    splits[j] = graph.splits()[kept[j]];
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : graph.edges()) {
    if (new_id[u] >= 0 && new_id[v] >= 0) edges.emplace_back(new_id[u], new_id[v]);
  }
  if (original_ids != nullptr) *original_ids = kept;
  return Graph::Create(n, graph.num_classes(), std::move(edges),
                       std::move(features), std::move(labels),
                       std::move(splits));
}

int DefaultBaseClassCount(int num_classes) { return (num_classes + 1) / 2; }

SessionPlan BuildSessionPlan(const Graph& graph, int base_count, int group_size,
                             std::span<const int> class_order) {
  const int num_classes = graph.num_classes();
  if (base_count < 1 || base_count >= num_classes) {
    throw ValidationError("base class count " + std::to_string(base_count) +
                          " must lie in [1, " + std::to_string(num_classes) +
                          ")");
  }
  if (group_size < 1 || group_size > num_classes - base_count) {
    throw ValidationError("group size " + std::to_string(group_size) +
                          " must lie in [1, " +
                          std::to_string(num_classes - base_count) + "]");
  }

  std::vector<int> order;
  if (class_order.empty()) {
    for (int c = 0; c < num_classes; ++c) order.push_back(c);
  } else {
    order.assign(class_order.begin(), class_order.end());
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    bool is_permutation = static_cast<int>(sorted.size()) == num_classes;
    for (int c = 0; is_permutation && c < num_classes; ++c) {
      is_permutation = sorted[c] == c;
    }
    if (!is_permutation) {
      throw ValidationError("class order is not a permutation of [0, " +
                            std::to_string(num_classes) + ")");
    }
  }

  SessionPlan plan;
  plan.base_classes.assign(order.begin(), order.begin() + base_count);
  for (int start = base_count; start < num_classes; start += group_size) {
    const int end = std::min(start + group_size, num_classes);
    plan.incremental_groups.emplace_back(order.begin() + start,
                                         order.begin() + end);
  }

  std::vector<int> session_of_class(num_classes, -1);
  for (int s = 0; s < plan.num_sessions(); ++s) {
    for (int c : plan.classes(s)) session_of_class[c] = s;
  }
  plan.session_nodes.resize(plan.num_sessions());
  for (int i = 0; i < graph.num_nodes(); ++i) {
    plan.session_nodes[session_of_class[graph.labels()[i]]].push_back(i);
  }
  return plan;
}

std::vector<int> ShuffledClassOrder(int num_classes, std::uint64_t seed) {
  std::vector<int> order(num_classes);
  for (int c = 0; c < num_classes; ++c) order[c] = c;
  Rng rng(seed);
  rng.Shuffle(order);
  return order;
}

}  // namespace acgl
