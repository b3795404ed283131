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

#include "acgl/config.h"

#include <charconv>
#include <set>
#include <sstream>

#include "acgl/dataset_io.h"
#include "acgl/error.h"
#include "acgl/report.h"

namespace acgl {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& text,
              const char* kind) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key, "expected " + std::string(kind) + ", got '" + text +
                               "'");
  }
  return value;
}

int ParseInt(const std::string& key, const std::string& text) {
  return ParseNumber<int>(key, text, "an integer");
}

double ParseReal(const std::string& key, const std::string& text) {
  return ParseNumber<double>(key, text, "a real number");
}

bool ParseBool(const std::string& key, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError(key, "expected true or false, got '" + text + "'");
}

std::optional<std::uint64_t> ParseSeed(const std::string& key,
                                       const std::string& text) {
  if (text == "auto") return std::nullopt;
  return ParseNumber<std::uint64_t>(key, text, "a non-negative integer");
}

std::string ParseString(const std::string& text) {
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    return text.substr(1, text.size() - 2);
  }
  return text;
}

std::string RenderSeed(const std::optional<std::uint64_t>& seed) {
  return seed ? std::to_string(*seed) : "auto";
}

std::string RenderBool(bool b) { return b ? "true" : "false"; }

// Registry entry helpers. `get` is a generic lambda returning a reference
// to the field for both const and non-const configs.
template <typename Get>
ConfigKey MakeInt(std::string name, std::string help, Get get) {
  return {name, ValueType::kInt, std::move(help),
          [get, name](ExperimentConfig& c, const std::string& v) {
            get(c) = ParseInt(name, v);
          },
          [get](const ExperimentConfig& c) {
            return std::to_string(get(c));
          }};
}

template <typename Get>
ConfigKey MakeReal(std::string name, std::string help, Get get) {
  return {name, ValueType::kReal, std::move(help),
          [get, name](ExperimentConfig& c, const std::string& v) {
            get(c) = ParseReal(name, v);
          },
          [get](const ExperimentConfig& c) {
            return FormatReal(get(c));
          }};
}

template <typename Get>
ConfigKey MakeBool(std::string name, std::string help, Get get) {
  return {name, ValueType::kBool, std::move(help),
          [get, name](ExperimentConfig& c, const std::string& v) {
            get(c) = ParseBool(name, v);
          },
          [get](const ExperimentConfig& c) {
            return RenderBool(get(c));
          }};
}

template <typename Get>
ConfigKey MakeSeed(std::string name, std::string help, Get get) {
  return {name, ValueType::kSeed, std::move(help),
          [get, name](ExperimentConfig& c, const std::string& v) {
            get(c) = ParseSeed(name, v);
          },
          [get](const ExperimentConfig& c) {
            return RenderSeed(get(c));
          }};
}

std::vector<ConfigKey> BuildRegistry() {
  using C = ExperimentConfig;
  std::vector<ConfigKey> keys;
  keys.push_back(
      {"data.path", ValueType::kString,
       "dataset directory; empty generates a synthetic graph",
       [](C& c, const std::string& v) { c.dataset_path = ParseString(v); },
       [](const C& c) { return c.dataset_path; }});
  keys.push_back(MakeBool("data.row_normalize",
                          "scale feature rows to unit L1 norm",
                          [](auto& c) -> auto& { return c.row_normalize_features; }));
  keys.push_back(MakeInt("synthetic.num_classes", "synthetic class count",
                         [](auto& c) -> auto& { return c.synthetic.num_classes; }));
  keys.push_back(MakeInt("synthetic.nodes_per_class",
                         "synthetic nodes per class",
                         [](auto& c) -> auto& { return c.synthetic.nodes_per_class; }));
  keys.push_back(MakeInt("synthetic.feature_dim", "synthetic feature width",
                         [](auto& c) -> auto& { return c.synthetic.feature_dim; }));
  keys.push_back(MakeReal("synthetic.homophily",
                          "probability that an edge is intra-class",
                          [](auto& c) -> auto& { return c.synthetic.homophily; }));
  keys.push_back(MakeReal("synthetic.avg_degree", "mean node degree",
                          [](auto& c) -> auto& { return c.synthetic.avg_degree; }));
  keys.push_back(MakeReal(
      "synthetic.class_separation", "std of class mean vectors",
      [](auto& c) -> auto& { return c.synthetic.class_separation; }));
  keys.push_back(MakeReal("synthetic.feature_noise",
                          "std of per-node feature noise",
                          [](auto& c) -> auto& { return c.synthetic.feature_noise; }));
  keys.push_back(MakeReal(
      "synthetic.train_fraction", "per-class train fraction",
      [](auto& c) -> auto& { return c.synthetic.train_fraction; }));
  keys.push_back(MakeReal("synthetic.val_fraction", "per-class val fraction",
                          [](auto& c) -> auto& { return c.synthetic.val_fraction; }));
  keys.push_back(MakeInt("plan.base_classes",
                         "classes in the base session; 0 = ceil(C/2)",
                         [](auto& c) -> auto& { return c.base_classes; }));
  keys.push_back(MakeInt("plan.group_size", "new classes per session",
                         [](auto& c) -> auto& { return c.group_size; }));
  keys.push_back(MakeBool("plan.shuffle_classes",
                          "seeded shuffle of the class order",
                          [](auto& c) -> auto& { return c.shuffle_class_order; }));
  keys.push_back(MakeInt("backbone.hidden_dim", "GCN hidden width",
                         [](auto& c) -> auto& { return c.backbone.hidden_dim; }));
  keys.push_back(MakeInt("backbone.epochs", "base-session training epochs",
                         [](auto& c) -> auto& { return c.backbone.epochs; }));
  keys.push_back(MakeReal("backbone.lr", "Adam learning rate",
                          [](auto& c) -> auto& { return c.backbone.learning_rate; }));
  keys.push_back(MakeReal("backbone.dropout", "dropout after the first layer",
                          [](auto& c) -> auto& { return c.backbone.dropout; }));
  keys.push_back(MakeReal("backbone.weight_decay", "L2 coefficient",
                          [](auto& c) -> auto& { return c.backbone.weight_decay; }));
  keys.push_back(MakeInt("expander.dim", "expanded feature width",
                         [](auto& c) -> auto& { return c.expanded_dim; }));
  keys.push_back(MakeBool("expander.use_adjacency",
                          "propagate through the adjacency before relu",
                          [](auto& c) -> auto& { return c.expander_uses_adjacency; }));
  keys.push_back(MakeReal("analytic.gamma", "ridge regularization (> 0)",
                          [](auto& c) -> auto& { return c.gamma; }));
  keys.push_back({"seed", ValueType::kInt, "global seed",
                  [](C& c, const std::string& v) {
                    c.seeds.global = ParseNumber<std::uint64_t>(
                        "seed", v, "a non-negative integer");
                  },
                  [](const C& c) { return std::to_string(c.seeds.global); }});
  keys.push_back(MakeSeed("seed.data", "synthetic graph and class order",
                          [](auto& c) -> auto& {
                            return c.seeds.data;
                          }));
  keys.push_back(MakeSeed("seed.backbone", "backbone init and dropout",
                          [](auto& c) -> auto& {
                            return c.seeds.backbone;
                          }));
  keys.push_back(MakeSeed("seed.expander", "expander weights",
                          [](auto& c) -> auto& {
                            return c.seeds.expander;
                          }));
  keys.push_back(
      {"eval.graph", ValueType::kString,
       "task: each task's own subgraph; union: all classes seen so far",
       [](C& c, const std::string& v) {
         const std::string s = ParseString(v);
         if (s == "task") {
           c.evaluation = EvaluationGraph::kTaskSubgraph;
         } else if (s == "union") {
           c.evaluation = EvaluationGraph::kSeenUnion;
         } else {
           throw ConfigError("eval.graph",
                             "expected task or union, got '" + s + "'");
         }
       },
       [](const C& c) {
         return std::string(c.evaluation == EvaluationGraph::kSeenUnion
                                ? "union"
                                : "task");
       }});
  return keys;
}

const ConfigKey* FindKey(const std::string& name) {
  for (const ConfigKey& key : ConfigRegistry()) {
    if (key.name == name) return &key;
  }
  return nullptr;
}

}  // namespace

const std::vector<ConfigKey>& ConfigRegistry() {
  static const std::vector<ConfigKey> registry = BuildRegistry();
  return registry;
}

const char* ValueTypeName(ValueType type) {
  switch (type) {
    case ValueType::kInt:
      return "int";
    case ValueType::kReal:
      return "real";
    case ValueType::kBool:
      return "bool";
    case ValueType::kString:
      return "string";
    case ValueType::kSeed:
      return "seed";
  }
  return "?";
}

void ApplyOverride(ExperimentConfig& config, const std::string& key,
                   const std::string& value) {
  const ConfigKey* entry = FindKey(key);
  if (entry == nullptr) throw ConfigError(key, "unknown config key");
  entry->apply(config, value);
}

void ApplyOverride(ExperimentConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("", "override '" + assignment + "' is not key=value");
  }
  ApplyOverride(config, Trim(assignment.substr(0, eq)),
                Trim(assignment.substr(eq + 1)));
}

ExperimentConfig ParseConfigText(const std::string& text,
                                 const std::string& source) {
  ExperimentConfig config;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = Trim(line);
    if (content.empty() || content.front() == '#') continue;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", where + "expected 'key = value'");
    }
    const std::string key = Trim(content.substr(0, eq));
    const std::string value = Trim(content.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ConfigError(key, where + "duplicate key");
    }
    try {
      ApplyOverride(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(e.field(), where + e.what());
    }
  }
  return config;
}

ExperimentConfig LoadConfigFile(const std::filesystem::path& path) {
  ExperimentConfig config = ParseConfigText(ReadTextFile(path), path.string());
  // Relative data paths are taken relative to the config file.
  if (!config.dataset_path.empty() &&
      std::filesystem::path(config.dataset_path).is_relative()) {
    config.dataset_path =
        (path.parent_path() / config.dataset_path).lexically_normal().string();
  }
  return config;
}

std::vector<std::pair<std::string, std::string>> DescribeConfig(
    const ExperimentConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const ConfigKey& key : ConfigRegistry()) {
    out.emplace_back(key.name, key.render(config));
  }
  return out;
}

std::string RenderConfigText(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [key, value] : DescribeConfig(config)) {
    out += key + " = " + value + "\n";
  }
  return out;
}

}  // namespace acgl
