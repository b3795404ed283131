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

#include "acgl/synthetic.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "acgl/error.h"
#include "acgl/random.h"

namespace acgl {

void ValidateSyntheticSpec(const SyntheticSpec& spec) {
  if (spec.num_classes < 2) {
    throw ValidationError("num_classes must be >= 2");
  }
  if (spec.nodes_per_class < 2) {
    throw ValidationError("nodes_per_class must be >= 2");
  }
  if (spec.feature_dim < 1) throw ValidationError("feature_dim must be >= 1");
  if (!(spec.homophily >= 0.0 && spec.homophily <= 1.0)) {
    throw ValidationError("homophily must lie in [0, 1]");
  }
  if (!(spec.avg_degree >= 0.0)) {
    throw ValidationError("avg_degree must be >= 0");
  }
  if (!(spec.class_separation >= 0.0) || !(spec.feature_noise >= 0.0)) {
    throw ValidationError("feature scales must be >= 0");
  }
  if (!(spec.train_fraction > 0.0) || !(spec.val_fraction >= 0.0) ||
      !(spec.train_fraction + spec.val_fraction < 1.0)) {
    throw ValidationError(
        "split fractions need train > 0, val >= 0 and train + val < 1");
  }
}

Graph GenerateSynthetic(const SyntheticSpec& spec) {
  ValidateSyntheticSpec(spec);
  Rng rng(spec.seed);
  const int c = spec.num_classes;
  const int per = spec.nodes_per_class;
  const int n = c * per;

  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i / per;

  // Edge budget, capped by the number of distinct pairs of each kind.
  const std::int64_t intra_pairs =
      static_cast<std::int64_t>(c) * per * (per - 1) / 2;
  const std::int64_t inter_pairs =
      static_cast<std::int64_t>(n) * (n - 1) / 2 - intra_pairs;
  const auto total =
      static_cast<std::int64_t>(std::llround(n * spec.avg_degree / 2.0));
  std::int64_t want_intra = 0;
  for (std::int64_t e = 0; e < total; ++e) {
    if (rng.Bernoulli(spec.homophily)) ++want_intra;
  }
  std::int64_t want_inter = total - want_intra;
  want_intra = std::min(want_intra, intra_pairs);
  want_inter = std::min(want_inter, inter_pairs);

  std::set<std::pair<int, int>> edges;
  std::int64_t have_intra = 0;
  while (have_intra < want_intra) {
    const int cls = static_cast<int>(rng.UniformIndex(c));
    const int a = cls * per + static_cast<int>(rng.UniformIndex(per));
    const int b = cls * per + static_cast<int>(rng.UniformIndex(per));
    if (a == b) continue;
    if (edges.emplace(std::min(a, b), std::max(a, b)).second) ++have_intra;
  }
  std::int64_t have_inter = 0;
  while (have_inter < want_inter) {
    const int a = static_cast<int>(rng.UniformIndex(n));
    const int b = static_cast<int>(rng.UniformIndex(n));
    if (labels[a] == labels[b]) continue;
    if (edges.emplace(std::min(a, b), std::max(a, b)).second) ++have_inter;
  }

  Eigen::MatrixXd means(c, spec.feature_dim);
  for (int k = 0; k < c; ++k) {
    for (int j = 0; j < spec.feature_dim; ++j) {
      means(k, j) = spec.class_separation * rng.Normal();
    }
  }
  Eigen::MatrixXd features(n, spec.feature_dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < spec.feature_dim; ++j) {
      features(i, j) = means(labels[i], j) + spec.feature_noise * rng.Normal();
    }
  }

  std::vector<Split> splits(n, Split::kTest);
  for (int k = 0; k < c; ++k) {
    std::vector<int> members(per);
    for (int j = 0; j < per; ++j) members[j] = k * per + j;
    rng.Shuffle(members);
    int n_train = static_cast<int>(std::floor(spec.train_fraction * per));
    int n_val = static_cast<int>(std::floor(spec.val_fraction * per));
    n_train = std::clamp(n_train, 1, per - 1);
    n_val = std::clamp(n_val, 0, per - 1 - n_train);
    for (int j = 0; j < n_train; ++j) splits[members[j]] = Split::kTrain;
    for (int j = n_train; j < n_train + n_val; ++j) {
      splits[members[j]] = Split::kVal;
    }
  }

  return Graph::Create(n, c, {edges.begin(), edges.end()}, std::move(features),
                       std::move(labels), std::move(splits));
}

Graph GenerateSynthetic(int num_classes, int nodes_per_class, int feature_dim,
                        double homophily, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.num_classes = num_classes;
  spec.nodes_per_class = nodes_per_class;
  spec.feature_dim = feature_dim;
  spec.homophily = homophily;
  spec.seed = seed;
  return GenerateSynthetic(spec);
}

double IntraClassEdgeFraction(const Graph& graph) {
  if (graph.num_edges() == 0) return 0.0;
  std::size_t intra = 0;
  for (auto [u, v] : graph.edges()) {
    if (graph.labels()[u] == graph.labels()[v]) ++intra;
  }
  return static_cast<double>(intra) / static_cast<double>(graph.num_edges());
}

}  // namespace acgl
