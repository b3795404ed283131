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

#include "acgl/metrics.h"

#include <cmath>
#include <numeric>
#include <string>

#include "acgl/error.h"

namespace acgl {

PerformanceMatrix::PerformanceMatrix(int num_sessions) {
  if (num_sessions < 0) throw ValidationError("negative session count");
  cells_.resize(num_sessions);
  for (int k = 0; k < num_sessions; ++k) cells_[k].resize(k + 1);
}

PerformanceMatrix PerformanceMatrix::FromRows(
    const std::vector<std::vector<double>>& rows) {
  PerformanceMatrix m(static_cast<int>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != k + 1) {
      throw ValidationError("row " + std::to_string(k) + " must hold " +
                            std::to_string(k + 1) + " entries");
    }
    for (std::size_t i = 0; i <= k; ++i) {
      m.Set(static_cast<int>(k), static_cast<int>(i), rows[k][i]);
    }
  }
  return m;
}

void PerformanceMatrix::CheckIndex(int after_session, int task) const {
  if (after_session < 0 || after_session >= num_sessions() || task < 0 ||
      task > after_session) {
    throw ValidationError("cell (" + std::to_string(after_session) + ", " +
                          std::to_string(task) +
                          ") is outside the lower triangle of a " +
                          std::to_string(num_sessions()) + "-session matrix");
  }
}

void PerformanceMatrix::Set(int after_session, int task, double accuracy) {
  CheckIndex(after_session, task);
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
    throw ValidationError("accuracy " + std::to_string(accuracy) +
                          " outside [0, 1]");
  }
  auto& cell = cells_[after_session][task];
  if (cell.has_value()) {
    throw ValidationError("cell (" + std::to_string(after_session) + ", " +
                          std::to_string(task) + ") already written");
  }
  cell = accuracy;
}

double PerformanceMatrix::At(int after_session, int task) const {
  CheckIndex(after_session, task);
  const auto& cell = cells_[after_session][task];
  if (!cell.has_value()) {
    throw ValidationError("cell (" + std::to_string(after_session) + ", " +
                          std::to_string(task) + ") not written");
  }
  return *cell;
}

bool PerformanceMatrix::IsSet(int after_session, int task) const {
  CheckIndex(after_session, task);
  return cells_[after_session][task].has_value();
}

bool PerformanceMatrix::IsComplete() const {
  for (const auto& row : cells_) {
    for (const auto& cell : row) {
      if (!cell.has_value()) return false;
    }
  }
  return true;
}

double AveragePerformance(const PerformanceMatrix& m) {
  if (m.num_sessions() == 0) throw ValidationError("empty performance matrix");
  const int k = m.num_sessions() - 1;
  double sum = 0.0;
  for (int i = 0; i <= k; ++i) sum += m.At(k, i);
  return sum / (k + 1);
}

std::optional<double> AverageForgetting(const PerformanceMatrix& m) {
  if (m.num_sessions() == 0) throw ValidationError("empty performance matrix");
  if (m.num_sessions() < 2) return std::nullopt;
  const int k = m.num_sessions() - 1;
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += m.At(i, i) - m.At(k, i);
  return sum / k;
}

MeanStd Summarize(std::span<const double> values) {
  if (values.empty()) throw ValidationError("nothing to summarize");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
}

double StageTimings::TrainingTotal() const {
  return base_training + alignment +
         std::accumulate(incremental.begin(), incremental.end(), 0.0);
}

RunReport MakeRunReport(
    PerformanceMatrix matrix, StageTimings timings,
    std::vector<std::pair<std::string, std::string>> config) {
  RunReport report;
  report.average_performance = AveragePerformance(matrix);
  report.average_forgetting = AverageForgetting(matrix);
  report.timings = std::move(timings);
  report.config = std::move(config);
  report.matrix = std::move(matrix);
  return report;
}

}  // namespace acgl
