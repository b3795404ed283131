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

#ifndef ACGL_DATASET_IO_H_
#define ACGL_DATASET_IO_H_

#include <filesystem>
#include <string>

#include "acgl/graph.h"

namespace acgl {

// On-disk dataset layout. A dataset is a directory holding
//
//   edges.csv     one "u,v" integer pair per line
//   features.csv  N rows of d comma-separated reals
//   labels.csv    N integers in [0, C)
//   split.csv     N tokens, each one of train / val / test
//   meta.json     {"format_version": 1, "num_nodes": N,
//                  "feature_dim": d, "num_classes": C}
//
// Blank lines and lines starting with '#' are ignored in the csv files.
// Directed edge lists are symmetrized and deduplicated on load.
struct DatasetFormat {
  std::string edges_file = "edges.csv";
  std::string features_file = "features.csv";
  std::string labels_file = "labels.csv";
  std::string split_file = "split.csv";
  std::string meta_file = "meta.json";
  char delimiter = ',';
};

inline constexpr int kDatasetFormatVersion = 1;

// Throws IoError for missing/unreadable files, ParseError (with the line
// number) for malformed content and ValidationError for out-of-range ids.
Graph LoadDataset(const std::filesystem::path& dir,
                  const DatasetFormat& format = {});

// Writes `graph` in the layout above, creating `dir` if needed. Reals are
// written in shortest round-trip form, so loading gives back the exact
// same Graph.
void SaveDataset(const Graph& graph, const std::filesystem::path& dir,
                 const DatasetFormat& format = {});

// Shortest decimal string that parses back to exactly `value`.
std::string FormatReal(double value);

}  // namespace acgl

#endif  // ACGL_DATASET_IO_H_
