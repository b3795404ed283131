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

#ifndef ACGL_METRICS_H_
#define ACGL_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace acgl {

// Lower-triangular accuracy table: At(k, i) is the accuracy on task i's test
// set after training through session k (both 0-based, i <= k). Entries lie
// in [0, 1] and are write-once.
class PerformanceMatrix {
 public:
  PerformanceMatrix() = default;
  explicit PerformanceMatrix(int num_sessions);

  // rows[k] holds k + 1 accuracies.
  static PerformanceMatrix FromRows(
      const std::vector<std::vector<double>>& rows);

  int num_sessions() const { return static_cast<int>(cells_.size()); }

  // Throws ValidationError for i > k, out-of-range indices, values outside
  // [0, 1] or a second write to the same cell.
  void Set(int after_session, int task, double accuracy);

  // Throws ValidationError if the cell was never written.
  double At(int after_session, int task) const;
  bool IsSet(int after_session, int task) const;
  bool IsComplete() const;

  bool operator==(const PerformanceMatrix&) const = default;

 private:
  void CheckIndex(int after_session, int task) const;

  std::vector<std::vector<std::optional<double>>> cells_;
};

// AP: mean of the final row. Throws ValidationError on an empty matrix.
double AveragePerformance(const PerformanceMatrix& m);

// AF: mean over tasks i < k of M[i][i] - M[k][i], k the last session.
// Positive means forgetting. Undefined (nullopt) with fewer than two
// sessions.
std::optional<double> AverageForgetting(const PerformanceMatrix& m);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
};

// Aggregate of repeated runs. Throws ValidationError on empty input.
MeanStd Summarize(std::span<const double> values);

// Wall-clock seconds per stage.
struct StageTimings {
  double base_training = 0.0;
  double alignment = 0.0;
  std::vector<double> incremental;  // one entry per incremental session
  double evaluation = 0.0;

  // Training time: base + alignment + all incremental sessions.
  double TrainingTotal() const;
};

struct RunReport {
  double average_performance = 0.0;
  std::optional<double> average_forgetting;
  StageTimings timings;
  std::vector<std::pair<std::string, std::string>> config;  // key, value
  PerformanceMatrix matrix;
};

RunReport MakeRunReport(
    PerformanceMatrix matrix, StageTimings timings,
    std::vector<std::pair<std::string, std::string>> config = {});

}  // namespace acgl

#endif  // ACGL_METRICS_H_
