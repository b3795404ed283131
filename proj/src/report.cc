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

#include "acgl/report.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "acgl/dataset_io.h"
#include "acgl/error.h"
#include "json.hpp"

namespace acgl {
namespace {

std::string Fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

struct Rgb {
  double r, g, b;
};

// Five-stop ramp from dark purple to bright yellow.
constexpr std::array<Rgb, 5> kRamp = {{{68, 1, 84},
                                       {59, 82, 139},
                                       {33, 145, 140},
                                       {94, 201, 98},
                                       {253, 231, 37}}};

}  // namespace

std::string RampColor(double value) {
  const double v = std::clamp(std::isfinite(value) ? value : 0.0, 0.0, 1.0);
  const double pos = v * (kRamp.size() - 1);
  const std::size_t lo = std::min<std::size_t>(static_cast<std::size_t>(pos),
                                                kRamp.size() - 2);
  const double t = pos - static_cast<double>(lo);
  auto mix = [&](double a, double b) {
    return static_cast<int>(std::lround(a + (b - a) * t));
  };
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                mix(kRamp[lo].r, kRamp[lo + 1].r),
                mix(kRamp[lo].g, kRamp[lo + 1].g),
                mix(kRamp[lo].b, kRamp[lo + 1].b));
  return buf;
}

std::string RenderReportJson(const RunReport& report) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["average_performance"] = report.average_performance;
  if (report.average_forgetting.has_value()) {
    doc["average_forgetting"] = *report.average_forgetting;
  } else {
    doc["average_forgetting"] = "n/a";
  }
  doc["num_sessions"] = report.matrix.num_sessions();
  nlohmann::ordered_json timings;
  timings["base_training"] = report.timings.base_training;
  timings["alignment"] = report.timings.alignment;
  timings["incremental"] = report.timings.incremental;
  timings["evaluation"] = report.timings.evaluation;
  timings["training_total"] = report.timings.TrainingTotal();
  doc["timings_s"] = std::move(timings);
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.config) config[key] = value;
  doc["config"] = std::move(config);
  return doc.dump(2) + "\n";
}

std::string RenderMatrixCsv(const PerformanceMatrix& matrix) {
  const int n = matrix.num_sessions();
  std::string out = "session";
  for (int i = 0; i < n; ++i) out += ",task_" + std::to_string(i);
  out += "\n";
  for (int k = 0; k < n; ++k) {
    out += std::to_string(k);
    for (int i = 0; i < n; ++i) {
      out += ",";
      if (i <= k && matrix.IsSet(k, i)) out += FormatReal(matrix.At(k, i));
    }
    out += "\n";
  }
  return out;
}

PerformanceMatrix ParseMatrixCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("session", 0) != 0) {
    throw ParseError("matrix.csv", 1, "missing header");
  }
  const int n = static_cast<int>(std::count(line.begin(), line.end(), ','));
  PerformanceMatrix m(n);
  int line_no = 1;
  for (int k = 0; k < n; ++k) {
    ++line_no;
    if (!std::getline(in, line)) {
      throw ParseError("matrix.csv", line_no, "missing row");
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    while (static_cast<int>(fields.size()) < n + 1) fields.emplace_back();
    if (fields[0] != std::to_string(k)) {
      throw ParseError("matrix.csv", line_no, "unexpected session index");
    }
    for (int i = 0; i <= k; ++i) {
      const std::string& f = fields[i + 1];
      if (f.empty()) continue;
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(f, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != f.size()) {
        throw ParseError("matrix.csv", line_no, "bad value '" + f + "'");
      }
      m.Set(k, i, v);
    }
  }
  return m;
}

std::string RenderHeatmapSvg(const PerformanceMatrix& matrix) {
  constexpr int kCell = 48;
  constexpr int kMargin = 64;
  const int n = matrix.num_sessions();
  const int size = kMargin + n * kCell + 16;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
      << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"" << size << "\" height=\"" << size
      << "\" fill=\"#ffffff\"/>\n";
  svg << "<text x=\"" << kMargin + n * kCell / 2 << "\" y=\"14\" "
      << "text-anchor=\"middle\">task</text>\n";
  svg << "<text x=\"12\" y=\"" << kMargin + n * kCell / 2 << "\" "
      << "text-anchor=\"middle\" transform=\"rotate(-90 12 "
      << kMargin + n * kCell / 2 << ")\">after session</text>\n";
  for (int i = 0; i < n; ++i) {
    const int center = kMargin + i * kCell + kCell / 2;
    svg << "<text x=\"" << center << "\" y=\"" << kMargin - 6
        << "\" text-anchor=\"middle\">" << i << "</text>\n";
    svg << "<text x=\"" << kMargin - 6 << "\" y=\"" << center + 4
        << "\" text-anchor=\"end\">" << i << "</text>\n";
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i <= k; ++i) {
      if (!matrix.IsSet(k, i)) continue;
      const double v = matrix.At(k, i);
      const int x = kMargin + i * kCell;
      const int y = kMargin + k * kCell;
      svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell
          << "\" height=\"" << kCell << "\" fill=\"" << RampColor(v)
          << "\"/>\n";
      svg << "<text x=\"" << x + kCell / 2 << "\" y=\"" << y + kCell / 2 + 4
          << "\" text-anchor=\"middle\" fill=\""
          << (v < 0.6 ? "#ffffff" : "#000000") << "\">" << Fixed(100.0 * v, 1)
          << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failure on " + path.string());
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void EmitReport(const RunReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  }
  WriteTextFile(out_dir / "report.json", RenderReportJson(report));
  WriteTextFile(out_dir / "matrix.csv", RenderMatrixCsv(report.matrix));
  WriteTextFile(out_dir / "heatmap.svg", RenderHeatmapSvg(report.matrix));
}

std::string RenderSweepCsv(const std::string& axis,
                           std::span<const SweepPoint> points) {
  std::string out = axis + ",ap,af,time_s\n";
  for (const SweepPoint& p : points) {
    out += FormatReal(p.value) + "," + FormatReal(p.average_performance) + ",";
    out += p.average_forgetting ? FormatReal(*p.average_forgetting) : "n/a";
    out += "," + FormatReal(p.training_seconds) + "\n";
  }
  return out;
}

std::string RenderSweepSvg(const std::string& axis,
                           std::span<const SweepPoint> points, bool log_x) {
  constexpr double kWidth = 480, kHeight = 320;
  constexpr double kLeft = 56, kRight = 16, kTop = 16, kBottom = 48;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  auto xform = [&](double v) { return log_x ? std::log10(v) : v; };
  double lo = 0.0, hi = 1.0;
  if (!points.empty()) {
    lo = hi = xform(points.front().value);
    for (const SweepPoint& p : points) {
      lo = std::min(lo, xform(p.value));
      hi = std::max(hi, xform(p.value));
    }
  }
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  auto px = [&](double v) { return kLeft + (xform(v) - lo) / (hi - lo) * plot_w; };
  auto py = [&](double ap) { return kTop + (1.0 - ap) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
      << "font-size=\"11\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"#ffffff\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"#000000\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"#000000\"/>\n";
  for (int pct = 0; pct <= 100; pct += 25) {
    const double y = py(pct / 100.0);
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << Fixed(y + 4, 1)
        << "\" text-anchor=\"end\">" << pct << "</text>\n";
  }
  svg << "<text x=\"14\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << kTop + plot_h / 2 << ")\">AP (%)</text>\n";
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 8
      << "\" text-anchor=\"middle\">" << axis << (log_x ? " (log scale)" : "")
      << "</text>\n";
  std::string polyline;
  for (const SweepPoint& p : points) {
    const std::string x = Fixed(px(p.value), 1);
    const std::string y = Fixed(py(p.average_performance), 1);
    if (!polyline.empty()) polyline += " ";
    polyline += x + "," + y;
    svg << "<circle cx=\"" << x << "\" cy=\"" << y
        << "\" r=\"3\" fill=\"#3b528b\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << Fixed(kTop + plot_h + 16, 1)
        << "\" text-anchor=\"middle\">" << FormatReal(p.value) << "</text>\n";
  }
  svg << "<polyline points=\"" << polyline
      << "\" fill=\"none\" stroke=\"#3b528b\" stroke-width=\"2\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace acgl
