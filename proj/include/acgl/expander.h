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

#ifndef ACGL_EXPANDER_H_
#define ACGL_EXPANDER_H_

#include <cstdint>

#include <Eigen/Dense>

#include "acgl/graph.h"

namespace acgl {

// Frozen random lift from backbone embeddings (h) to classifier inputs
// (d_feg > h). Weights are uniform in [-1/sqrt(h), 1/sqrt(h)].
class FeatureExpander {
 public:
  // Throws ValidationError unless 1 <= h < d_feg.
  FeatureExpander() = default;

  FeatureExpander(int hidden_dim, int expanded_dim, std::uint64_t seed,
                  bool uses_adjacency = false);

  // Wraps explicit weights (deserialization, tests). Does not enforce
  // d_feg > h.
  FeatureExpander(Eigen::MatrixXd weights, std::uint64_t seed,
                  bool uses_adjacency);

  // relu(H W), or relu(A H W) when uses_adjacency() is set; `adj` is only
  // read in that case. Throws ShapeError.
  Eigen::MatrixXd Expand(const Eigen::MatrixXd& hidden,
                         const NormalizedAdjacency* adj = nullptr) const;

  const Eigen::MatrixXd& weights() const { return weights_; }
  int hidden_dim() const { return static_cast<int>(weights_.rows()); }
  int expanded_dim() const { return static_cast<int>(weights_.cols()); }
  std::uint64_t seed() const { return seed_; }
  bool uses_adjacency() const { return uses_adjacency_; }

  bool operator==(const FeatureExpander&) const = default;

 private:
  Eigen::MatrixXd weights_;
  std::uint64_t seed_ = 0;
  bool uses_adjacency_ = false;
};

}  // namespace acgl

#endif  // ACGL_EXPANDER_H_
