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

#ifndef ACGL_TOOLS_CLI_H_
#define ACGL_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace acgl::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kRuntimeError = 3,
  kIoError = 4,
};

// Entry point behind the `acgl` binary. `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Help text of a subcommand ("" for the top level).
std::string HelpText(const std::string& subcommand);

// Every long flag registered on a subcommand, e.g. "--config".
std::vector<std::string> RegisteredFlags(const std::string& subcommand);

// Names of the registered subcommands.
std::vector<std::string> Subcommands();

// Flags registered without a description. Empty when all are documented.
std::vector<std::string> UndocumentedFlags();

}  // namespace acgl::cli

#endif  // ACGL_TOOLS_CLI_H_
