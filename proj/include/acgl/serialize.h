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

#ifndef ACGL_SERIALIZE_H_
#define ACGL_SERIALIZE_H_

#include <filesystem>
#include <string>

#include "acgl/analytic.h"
#include "acgl/expander.h"
#include "acgl/gcn.h"

namespace acgl {

// Versioned little-endian binary container.
//
//   header  : "ACGL" | u32 version | u32 kind
//   matrix  : u64 rows | u64 cols | rows*cols f64, row-major
//
//   backbone: header(kind=1) | matrix w0 | matrix w1
//   expander: header(kind=2) | u64 seed | u8 uses_adjacency | matrix W
//   analytic: header(kind=3) | f64 gamma | u64 n | n x i64 class ids
//             | matrix W | matrix R
inline constexpr std::uint32_t kContainerVersion = 1;

std::string EncodeBackbone(const BackboneParams& params);
std::string EncodeExpander(const FeatureExpander& expander);
std::string EncodeAnalyticState(const AnalyticState& state);

// Expected dimensions for decoding; negative entries are not checked.
struct BackboneDims {
  int input_dim = -1;
  int hidden_dim = -1;
  int output_dim = -1;
};

// Decoders throw ParseError on truncated or foreign data and
// ValidationError when dimensions disagree with `expect`.
BackboneParams DecodeBackbone(const std::string& bytes,
                              const BackboneDims& expect = {});
FeatureExpander DecodeExpander(const std::string& bytes, int expect_hidden = -1,
                               int expect_expanded = -1);
AnalyticState DecodeAnalyticState(const std::string& bytes,
                                  int expect_feature_dim = -1);

void WriteBinaryFile(const std::filesystem::path& path,
                     const std::string& bytes);
std::string ReadBinaryFile(const std::filesystem::path& path);

}  // namespace acgl

#endif  // ACGL_SERIALIZE_H_
