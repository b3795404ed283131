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

#ifndef ACGL_CONFIG_H_
#define ACGL_CONFIG_H_

#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "acgl/harness.h"

namespace acgl {

// Experiment config files are flat "key = value" text with dotted keys:
//
//   # Cora-style run
//   data.path = data/cora
//   backbone.epochs = 50
//   analytic.gamma = 1.0
//
// Every key has a declared type; unknown keys, duplicates and malformed
// values are rejected with ConfigError naming the key. Seeds accept "auto"
// to derive them from `seed`.
enum class ValueType { kInt, kReal, kBool, kString, kSeed };

struct ConfigKey {
  std::string name;
  ValueType type;
  std::string help;
  std::function<void(ExperimentConfig&, const std::string&)> apply;
  std::function<std::string(const ExperimentConfig&)> render;
};

const std::vector<ConfigKey>& ConfigRegistry();

const char* ValueTypeName(ValueType type);

ExperimentConfig ParseConfigText(const std::string& text,
                                 const std::string& source = "<config>");
// A relative data.path is resolved against the config file's directory.
ExperimentConfig LoadConfigFile(const std::filesystem::path& path);

// Applies `key=value`. Throws ConfigError.
void ApplyOverride(ExperimentConfig& config, const std::string& assignment);
void ApplyOverride(ExperimentConfig& config, const std::string& key,
                   const std::string& value);

// Every registered key with its current value, in registry order.
std::vector<std::pair<std::string, std::string>> DescribeConfig(
    const ExperimentConfig& config);

// Text that ParseConfigText turns back into `config`.
std::string RenderConfigText(const ExperimentConfig& config);

}  // namespace acgl

#endif  // ACGL_CONFIG_H_
