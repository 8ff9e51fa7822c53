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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ifm/schemes.hpp"

namespace ifm::cli {

enum class Command { run, sweep, shots, verify };
enum class OutputFormat { json, csv };

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,
    kExitInvariant = 3,
    kExitMismatch = 4,
};

/// Bad flags or config values; `field()` names the offending key.
class UsageError : public std::runtime_error {
   public:
    UsageError(std::string field, const std::string &message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string &field() const { return field_; }

   private:
    std::string field_;
};

struct RunConfig {
    Command command = Command::run;
    SchemeKind scheme = SchemeKind::multipixel_zeno;
    std::optional<std::size_t> d;
    std::size_t cycles = 100;
    /// Exactly one of pattern / transmissions is set for run and shots.
    std::optional<std::string> pattern;
    std::optional<std::vector<double>> transmissions;
    std::uint64_t shots = 10000;
    std::uint64_t seed = 1;
    std::vector<std::size_t> sweep_cycles;
    std::vector<std::size_t> sweep_dimensions;
    std::vector<double> sweep_transmissions;
    OutputFormat format = OutputFormat::json;
    std::optional<std::string> out;

    bool operator==(const RunConfig &) const = default;
};

std::string_view to_string(Command command);
std::string_view to_string(OutputFormat format);

/// `args` starts at the subcommand (no program name). A --config file is
/// read first; flags on the command line override its values.
RunConfig parse_config(std::span<const std::string> args);

/// Builds a RunConfig from the JSON config-file schema (the same keys as the
/// flags, without dashes: "scheme", "d", "N", "pattern", ...).
RunConfig config_from_json(Command command, const nlohmann::json &json);

/// Inverse of config_from_json for the populated fields.
nlohmann::ordered_json config_to_json(const RunConfig &config);

/// Throws UsageError.
void validate(const RunConfig &config);

/// Pixel pattern from the run's bits or transmissions.
PixelPattern pattern_of(const RunConfig &config);

SchemeConfig scheme_config(const RunConfig &config);

}  // namespace ifm::cli
