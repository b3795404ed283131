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

#include "acgl/expander.h"

#include <cmath>
#include <string>

#include "acgl/error.h"
#include "acgl/random.h"

namespace acgl {

FeatureExpander::FeatureExpander(int hidden_dim, int expanded_dim,
                                 std::uint64_t seed, bool uses_adjacency)
    : seed_(seed), uses_adjacency_(uses_adjacency) {
  if (hidden_dim < 1) throw ValidationError("expander input dim must be >= 1");
  if (expanded_dim <= hidden_dim) {
    throw ValidationError("expanded dim " + std::to_string(expanded_dim) +
                          " must exceed hidden dim " +
                          std::to_string(hidden_dim));
  }
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  Rng rng(seed);
  weights_.resize(hidden_dim, expanded_dim);
  for (int i = 0; i < hidden_dim; ++i) {
    for (int j = 0; j < expanded_dim; ++j) {
      weights_(i, j) = rng.Uniform(-bound, bound);
    }
  }
}

FeatureExpander::FeatureExpander(Eigen::MatrixXd weights, std::uint64_t seed,
                                 bool uses_adjacency)
    : weights_(std::move(weights)),
      seed_(seed),
      uses_adjacency_(uses_adjacency) {}

Eigen::MatrixXd FeatureExpander::Expand(const Eigen::MatrixXd& hidden,
                                        const NormalizedAdjacency* adj) const {
  if (hidden.cols() != weights_.rows()) {
    throw ShapeError("hidden width " + std::to_string(hidden.cols()) +
                     " != expander input dim " +
                     std::to_string(weights_.rows()));
  }
  if (!uses_adjacency_) return (hidden * weights_).cwiseMax(0.0);
  if (adj == nullptr) {
    throw ValidationError("adjacency-aware expander needs an adjacency");
  }
  if (adj->size() != hidden.rows()) {
    throw ShapeError("adjacency size does not match hidden rows");
  }
  return (adj->matrix() * (hidden * weights_)).cwiseMax(0.0);
}

}  // namespace acgl
