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

#ifndef ACGL_REPORT_H_
#define ACGL_REPORT_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "acgl/metrics.h"

namespace acgl {

inline constexpr int kReportSchemaVersion = 1;

// report.json: schema_version, average_performance, average_forgetting
// (number, or the string "n/a" for single-session runs), num_sessions,
// timings_s {base_training, alignment, incremental[], evaluation,
// training_total}, config {key: value}. Accuracies are fractions in [0, 1].
std::string RenderReportJson(const RunReport& report);

// matrix.csv: header "session,task_0,...,task_{n-1}", then one line per
// session k with k + 1 values and empty cells above the diagonal.
std::string RenderMatrixCsv(const PerformanceMatrix& matrix);
PerformanceMatrix ParseMatrixCsv(const std::string& text);

// heatmap.svg: one square per written cell, colored on a fixed ramp from
// dark (0) to bright (1) and labeled with the accuracy in percent.
std::string RenderHeatmapSvg(const PerformanceMatrix& matrix);

// "#rrggbb" on the heatmap ramp; `value` is clamped to [0, 1].
std::string RampColor(double value);

// Writes report.json, matrix.csv and heatmap.svg into `out_dir` (created if
// missing). Throws IoError naming the path on failure.
void EmitReport(const RunReport& report, const std::filesystem::path& out_dir);

struct SweepPoint {
  double value = 0.0;
  double average_performance = 0.0;
  std::optional<double> average_forgetting;
  double training_seconds = 0.0;
};

// sweep.csv: "<axis>,ap,af,time_s" then one line per point.
std::string RenderSweepCsv(const std::string& axis,
                           std::span<const SweepPoint> points);

// Line plot of AP (percent) against the swept value.
std::string RenderSweepSvg(const std::string& axis,
                           std::span<const SweepPoint> points, bool log_x);

void WriteTextFile(const std::filesystem::path& path, const std::string& text);
std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace acgl

#endif  // ACGL_REPORT_H_
