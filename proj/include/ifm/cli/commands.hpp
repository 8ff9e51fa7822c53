// Copyright 2026 The ifm-imaging Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>

#include "ifm/cli/run_config.hpp"

namespace ifm::cli {

/// Formats with 15 significant digits, "C" locale.
std::string format_number(double x);

/// Rounds to 15 significant digits so JSON output is stable.
double round15(double x);

int cmd_run(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_sweep(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_shots(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_verify(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Parses argv (without the program name), runs the subcommand and maps
/// errors onto exit codes.
int main_with_args(std::span<const std::string> args, std::ostream &out, std::ostream &err);

}  // namespace ifm::cli
