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

#ifndef ACGL_SYNTHETIC_H_
#define ACGL_SYNTHETIC_H_

#include <cstdint>

#include "acgl/graph.h"

namespace acgl {

// Stochastic-block-model graph with class-conditional Gaussian features.
//
// Node i belongs to class i / nodes_per_class. The generator draws
// round(num_nodes * avg_degree / 2) distinct edges; each one is intra-class
// with probability `homophily`, otherwise inter-class, with endpoints uniform
// within that category. Each class c gets a mean vector mu_c ~
// N(0, class_separation^2 I) and each node's features are mu_c plus
// N(0, feature_noise^2 I) noise. Splits are assigned per class by shuffling
// and taking train/val fractions, with at least one train and one test node
// per class.
struct SyntheticSpec {
  int num_classes = 4;
  int nodes_per_class = 50;
  int feature_dim = 16;
  double homophily = 0.9;
  double avg_degree = 6.0;
  double class_separation = 1.0;
  double feature_noise = 1.0;
  double train_fraction = 0.6;
  double val_fraction = 0.2;
  std::uint64_t seed = 0;
};

// Throws ValidationError for out-of-range parameters.
void ValidateSyntheticSpec(const SyntheticSpec& spec);

Graph GenerateSynthetic(const SyntheticSpec& spec);

// Convenience overload with default degree, noise and split fractions.
Graph GenerateSynthetic(int num_classes, int nodes_per_class, int feature_dim,
                        double homophily, std::uint64_t seed);

// Fraction of edges whose endpoints share a label (0 for an edgeless graph).
double IntraClassEdgeFraction(const Graph& graph);

}  // namespace acgl

#endif  // ACGL_SYNTHETIC_H_
