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

#include "acgl/dataset_io.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "acgl/error.h"
#include "json.hpp"

namespace acgl {
namespace {

namespace fs = std::filesystem;

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitFields(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(Trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Calls `fn(line_number, content)` for every non-blank, non-comment line.
template <typename Fn>
void ForEachLine(const fs::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view content = Trim(line);
    if (content.empty() || content.front() == '#') continue;
    fn(line_no, content);
  }
  if (in.bad()) throw IoError("read failure on " + path.string());
}

int ParseInt(std::string_view token, const fs::path& path, int line) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw ParseError(path.string(), line,
                     "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

double ParseReal(std::string_view token, const fs::path& path, int line) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw ParseError(path.string(), line,
                     "expected a real number, got '" + std::string(token) + "'");
  }
  return value;
}

struct Meta {
  int num_nodes = 0;
  int feature_dim = 0;
  int num_classes = 0;
};

Meta ReadMeta(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string(), 1, e.what());
  }
  auto field = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer()) {
      throw ParseError(path.string(), 1,
                       std::string("missing integer field '") + key + "'");
    }
    return doc[key].get<int>();
  };
  if (doc.contains("format_version") &&
      doc["format_version"] != kDatasetFormatVersion) {
    throw ValidationError(path.string() + ": unsupported format_version " +
                          doc["format_version"].dump());
  }
  Meta meta{field("num_nodes"), field("feature_dim"), field("num_classes")};
  if (meta.num_nodes < 0 || meta.feature_dim < 0 || meta.num_classes < 1) {
    throw ValidationError(path.string() + ": invalid dimensions");
  }
  return meta;
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace

std::string FormatReal(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

Graph LoadDataset(const fs::path& dir, const DatasetFormat& format) {
  if (!fs::is_directory(dir)) {
    throw IoError("dataset directory not found: " + dir.string());
  }
  const Meta meta = ReadMeta(dir / format.meta_file);

  const fs::path edges_path = dir / format.edges_file;
  std::vector<std::pair<int, int>> edges;
  ForEachLine(edges_path, [&](int line, std::string_view content) {
    const auto fields = SplitFields(content, format.delimiter);
    if (fields.size() != 2) {
      throw ParseError(edges_path.string(), line,
                       "expected 2 columns, got " + std::to_string(fields.size()));
    }
    const int u = ParseInt(fields[0], edges_path, line);
    const int v = ParseInt(fields[1], edges_path, line);
    if (u < 0 || v < 0 || u >= meta.num_nodes || v >= meta.num_nodes) {
      throw ValidationError(edges_path.string() + ":" + std::to_string(line) +
                            ": edge (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") outside [0, " +
                            std::to_string(meta.num_nodes) + ")");
    }
    edges.emplace_back(u, v);
  });

  const fs::path features_path = dir / format.features_file;
  Eigen::MatrixXd features(meta.num_nodes, meta.feature_dim);
  int row = 0;
  ForEachLine(features_path, [&](int line, std::string_view content) {
    if (row >= meta.num_nodes) {
      throw ParseError(features_path.string(), line,
                       "more than " + std::to_string(meta.num_nodes) + " rows");
    }
    const auto fields = SplitFields(content, format.delimiter);
    if (static_cast<int>(fields.size()) != meta.feature_dim) {
      throw ParseError(features_path.string(), line,
                       "expected " + std::to_string(meta.feature_dim) +
                           " columns, got " + std::to_string(fields.size()));
    }
    for (int j = 0; j < meta.feature_dim; ++j) {
      features(row, j) = ParseReal(fields[j], features_path, line);
    }
    ++row;
  });
  if (row != meta.num_nodes && meta.feature_dim > 0) {
    throw ValidationError(features_path.string() + ": " + std::to_string(row) +
                          " rows, expected " + std::to_string(meta.num_nodes));
  }

  const fs::path labels_path = dir / format.labels_file;
  std::vector<int> labels;
  ForEachLine(labels_path, [&](int line, std::string_view content) {
    const int label = ParseInt(content, labels_path, line);
    if (label < 0 || label >= meta.num_classes) {
      throw ValidationError(labels_path.string() + ":" + std::to_string(line) +
                            ": label " + std::to_string(label) +
                            " outside [0, " + std::to_string(meta.num_classes) +
                            ")");
    }
    labels.push_back(label);
  });
  if (static_cast<int>(labels.size()) != meta.num_nodes) {
    throw ValidationError(labels_path.string() + ": " +
                          std::to_string(labels.size()) + " labels, expected " +
                          std::to_string(meta.num_nodes));
  }

  const fs::path split_path = dir / format.split_file;
  std::vector<Split> splits;
  ForEachLine(split_path, [&](int line, std::string_view content) {
    if (content == "train") {
      splits.push_back(Split::kTrain);
    } else if (content == "val") {
      splits.push_back(Split::kVal);
    } else if (content == "test") {
      splits.push_back(Split::kTest);
    } else {
      throw ParseError(split_path.string(), line,
                       "expected train/val/test, got '" + std::string(content) +
                           "'");
    }
  });
  if (static_cast<int>(splits.size()) != meta.num_nodes) {
    throw ValidationError(split_path.string() + ": " +
                          std::to_string(splits.size()) + " entries, expected " +
                          std::to_string(meta.num_nodes));
  }

  return Graph::Create(meta.num_nodes, meta.num_classes, std::move(edges),
                       std::move(features), std::move(labels),
                       std::move(splits));
}

void SaveDataset(const Graph& graph, const fs::path& dir,
                 const DatasetFormat& format) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  nlohmann::ordered_json meta;
  meta["format_version"] = kDatasetFormatVersion;
  meta["num_nodes"] = graph.num_nodes();
  meta["feature_dim"] = graph.feature_dim();
  meta["num_classes"] = graph.num_classes();
  WriteFile(dir / format.meta_file, meta.dump(2) + "\n");

  std::string buf;
  for (auto [u, v] : graph.edges()) {
    buf += std::to_string(u);
    buf += format.delimiter;
    buf += std::to_string(v);
    buf += '\n';
  }
  WriteFile(dir / format.edges_file, buf);

  buf.clear();
  const Eigen::MatrixXd& x = graph.features();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (j > 0) buf += format.delimiter;
      buf += FormatReal(x(i, j));
    }
    buf += '\n';
  }
  WriteFile(dir / format.features_file, buf);

  buf.clear();
  for (int label : graph.labels()) {
    buf += std::to_string(label);
    buf += '\n';
  }
  WriteFile(dir / format.labels_file, buf);

  buf.clear();
  for (Split s : graph.splits()) {
    buf += s == Split::kTrain ? "train\n" : s == Split::kVal ? "val\n" : "test\n";
  }
  WriteFile(dir / format.split_file, buf);
}

}  // namespace acgl
