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

#include "ifm/cli/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

namespace ifm::cli {

namespace {

struct Flags {
    std::string scheme;
    std::size_t d = 0;
    std::size_t cycles = 0;
    std::string pattern;
    std::vector<double> transmissions;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> sweep_cycles;
    std::vector<std::size_t> sweep_dimensions;
    std::vector<double> sweep_transmissions;
    std::string format;
    std::string out;
    std::string config_file;
};

struct Options {
    CLI::Option *scheme, *d, *cycles, *pattern, *transmissions, *shots, *seed, *sweep_cycles, *sweep_dimensions,
        *sweep_transmissions, *format, *out, *config_file;
};

Options add_flags(CLI::App &app, Flags &f) {
    Options o{};
    o.scheme = app.add_option("--scheme", f.scheme, "Scheme kind, e.g. multipixel-zeno");
    o.d = app.add_option("--d", f.d, "Pixel count (OAM dimension)");
    o.cycles = app.add_option("--N", f.cycles, "Number of cycles");
    o.pattern = app.add_option("--pattern", f.pattern, "Opaque/transparent bits, e.g. 1010");
    o.transmissions =
        app.add_option("--transmissions", f.transmissions, "Comma-separated pixel transmissions")->delimiter(',');
    o.shots = app.add_option("--shots", f.shots, "Number of photons");
    o.seed = app.add_option("--seed", f.seed, "RNG seed");
    o.sweep_cycles = app.add_option("--sweep-N", f.sweep_cycles, "Comma-separated cycle counts")->delimiter(',');
    o.sweep_dimensions = app.add_option("--sweep-d", f.sweep_dimensions, "Comma-separated pixel counts")->delimiter(',');
    o.sweep_transmissions =
        app.add_option("--sweep-T", f.sweep_transmissions, "Comma-separated transmissions")->delimiter(',');
    o.format = app.add_option("--format", f.format, "json or csv");
    o.out = app.add_option("--out", f.out, "Output path (default stdout)");
    o.config_file = app.add_option("--config", f.config_file, "JSON config file");
    return o;
}

OutputFormat parse_format(std::string_view s) {
    if (s == "json") {
        return OutputFormat::json;
    }
    if (s == "csv") {
        return OutputFormat::csv;
    }
    throw UsageError("format", "expected json or csv, got '" + std::string(s) + "'");
}

SchemeKind parse_scheme(std::string_view s) {
    try {
        return parse_scheme_kind(s);
    } catch (const std::invalid_argument &e) {
        throw UsageError("scheme", e.what());
    }
}

std::vector<double> parse_number_list(const nlohmann::json &j, const std::string &field) {
    std::vector<double> out;
    if (j.is_array()) {
        for (const auto &x : j) {
            if (!x.is_number()) {
                throw UsageError(field, "expected numbers");
            }
            out.push_back(x.get<double>());
        }
        return out;
    }
    if (j.is_string()) {
        std::stringstream ss(j.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                out.push_back(std::stod(item, &used));
                if (used != item.size()) {
                    throw std::invalid_argument(item);
                }
            } catch (const std::exception &) {
                throw UsageError(field, "'" + item + "' is not a number");
            }
        }
        return out;
    }
    throw UsageError(field, "expected a list of numbers");
}

std::vector<std::size_t> parse_count_list(const nlohmann::json &j, const std::string &field) {
    std::vector<std::size_t> out;
    for (double x : parse_number_list(j, field)) {
        if (x < 1 || x != static_cast<double>(static_cast<std::size_t>(x))) {
            throw UsageError(field, "expected positive integers");
        }
        out.push_back(static_cast<std::size_t>(x));
    }
    return out;
}

std::uint64_t parse_count(const nlohmann::json &j, const std::string &field) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        throw UsageError(field, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

/// Applies the keys present in `j`; returns whether "scheme" was among them.
bool apply_json(RunConfig &c, const nlohmann::json &j) {
    if (!j.is_object()) {
        throw UsageError("config", "expected a JSON object");
    }
    bool scheme_set = false;
    for (const auto &[key, value] : j.items()) {
        if (key == "command") {
            continue;
        } else if (key == "scheme") {
            if (!value.is_string()) {
                throw UsageError("scheme", "expected a string");
            }
            c.scheme = parse_scheme(value.get<std::string>());
            scheme_set = true;
        } else if (key == "d") {
            c.d = static_cast<std::size_t>(parse_count(value, "d"));
        } else if (key == "N") {
            c.cycles = static_cast<std::size_t>(parse_count(value, "N"));
        } else if (key == "pattern") {
            if (!value.is_string()) {
                throw UsageError("pattern", "expected a string of 0/1");
            }
            c.pattern = value.get<std::string>();
        } else if (key == "transmissions") {
            c.transmissions = parse_number_list(value, "transmissions");
        } else if (key == "shots") {
            c.shots = parse_count(value, "shots");
        } else if (key == "seed") {
            c.seed = parse_count(value, "seed");
        } else if (key == "sweep-N") {
            c.sweep_cycles = parse_count_list(value, "sweep-N");
        } else if (key == "sweep-d") {
            c.sweep_dimensions = parse_count_list(value, "sweep-d");
        } else if (key == "sweep-T") {
            c.sweep_transmissions = parse_number_list(value, "sweep-T");
        } else if (key == "format") {
            if (!value.is_string()) {
                throw UsageError("format", "expected a string");
            }
            c.format = parse_format(value.get<std::string>());
        } else if (key == "out") {
            if (!value.is_string()) {
                throw UsageError("out", "expected a path");
            }
            c.out = value.get<std::string>();
        } else {
            throw UsageError(key, "unknown config key");
        }
    }
    return scheme_set;
}

void resolve_default_scheme(RunConfig &c, bool scheme_set) {
    if (!scheme_set) {
        c.scheme = c.transmissions.has_value() || !c.sweep_transmissions.empty() ? SchemeKind::semitransparent_zeno
                                                                                 : SchemeKind::multipixel_zeno;
    }
}

void check_transmissions(std::span<const double> t, const std::string &field) {
    for (double x : t) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw UsageError(field, "value " + std::to_string(x) + " is outside [0, 1]");
        }
    }
}

}  // namespace

std::string_view to_string(Command command) {
    switch (command) {
        case Command::run:
            return "run";
        case Command::sweep:
            return "sweep";
        case Command::shots:
            return "shots";
        case Command::verify:
            return "verify";
    }
    return "run";
}

std::string_view to_string(OutputFormat format) {
    return format == OutputFormat::json ? "json" : "csv";
}

RunConfig parse_config(std::span<const std::string> args) {
    CLI::App app{"Interaction-free imaging simulator", "ifm"};
    app.require_subcommand(1);
    struct Sub {
        Command command;
        CLI::App *app;
        Flags flags;
        Options options;
    };
    std::vector<Sub> subs;
    subs.reserve(4);
    for (auto [cmd, help] : {std::pair{Command::run, "Exact distribution, closed forms and trace"},
                             std::pair{Command::sweep, "Tabulate probabilities over N, d or T"},
                             std::pair{Command::shots, "Monte Carlo clicks and image reconstruction"},
                             std::pair{Command::verify, "Run the invariant suites"}}) {
        subs.push_back({cmd, app.add_subcommand(std::string(to_string(cmd)), help), {}, {}});
    }
    for (auto &s : subs) {
        s.options = add_flags(*s.app, s.flags);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        throw UsageError("help", app.help());
    } catch (const CLI::ParseError &e) {
        throw UsageError("arguments", e.what());
    }

    auto it = std::find_if(subs.begin(), subs.end(), [](const Sub &s) { return s.app->parsed(); });
    const Flags &f = it->flags;
    const Options &o = it->options;

    RunConfig c;
    c.command = it->command;
    bool scheme_set = false;
    if (o.config_file->count() > 0) {
        std::ifstream in(f.config_file);
        if (!in) {
            throw UsageError("config", "cannot open '" + f.config_file + "'");
        }
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception &e) {
            throw UsageError("config", std::string("invalid JSON: ") + e.what());
        }
        scheme_set = apply_json(c, j);
    }
    if (o.scheme->count() > 0) {
        c.scheme = parse_scheme(f.scheme);
        scheme_set = true;
    }
    if (o.d->count() > 0) {
        c.d = f.d;
    }
    if (o.cycles->count() > 0) {
        c.cycles = f.cycles;
    }
    if (o.pattern->count() > 0) {
        c.pattern = f.pattern;
        c.transmissions.reset();
    }
    if (o.transmissions->count() > 0) {
        c.transmissions = f.transmissions;
        c.pattern.reset();
    }
    if (o.shots->count() > 0) {
        c.shots = f.shots;
    }
    if (o.seed->count() > 0) {
        c.seed = f.seed;
    }
    if (o.sweep_cycles->count() > 0) {
        c.sweep_cycles = f.sweep_cycles;
    }
    if (o.sweep_dimensions->count() > 0) {
        c.sweep_dimensions = f.sweep_dimensions;
    }
    if (o.sweep_transmissions->count() > 0) {
        c.sweep_transmissions = f.sweep_transmissions;
    }
    if (o.format->count() > 0) {
        c.format = parse_format(f.format);
    }
    if (o.out->count() > 0) {
        c.out = f.out;
    }
    resolve_default_scheme(c, scheme_set);
    validate(c);
    return c;
}

RunConfig config_from_json(Command command, const nlohmann::json &json) {
    RunConfig c;
    c.command = command;
    resolve_default_scheme(c, apply_json(c, json));
    validate(c);
    return c;
}

nlohmann::ordered_json config_to_json(const RunConfig &c) {
    nlohmann::ordered_json j;
    j["command"] = std::string(to_string(c.command));
    j["scheme"] = std::string(to_string(c.scheme));
    if (c.d) {
        j["d"] = *c.d;
    }
    j["N"] = c.cycles;
    if (c.pattern) {
        j["pattern"] = *c.pattern;
    }
    if (c.transmissions) {
        j["transmissions"] = *c.transmissions;
    }
    j["shots"] = c.shots;
    j["seed"] = c.seed;
    if (!c.sweep_cycles.empty()) {
        j["sweep-N"] = c.sweep_cycles;
    }
    if (!c.sweep_dimensions.empty()) {
        j["sweep-d"] = c.sweep_dimensions;
    }
    if (!c.sweep_transmissions.empty()) {
        j["sweep-T"] = c.sweep_transmissions;
    }
    j["format"] = std::string(to_string(c.format));
    if (c.out) {
        j["out"] = *c.out;
    }
    return j;
}

void validate(const RunConfig &c) {
    if (c.command == Command::verify) {
        return;
    }
    const int axes = static_cast<int>(!c.sweep_cycles.empty()) + static_cast<int>(!c.sweep_dimensions.empty()) +
                     static_cast<int>(!c.sweep_transmissions.empty());
    if (c.command == Command::sweep) {
        if (axes == 0) {
            throw UsageError("sweep", "empty sweep axis; give --sweep-N, --sweep-d or --sweep-T");
        }
        if (axes > 1) {
            throw UsageError("sweep", "give exactly one sweep axis");
        }
        if (is_single_pass(c.scheme)) {
            throw UsageError("scheme", "sweeps need a multi-pass scheme, got " + std::string(to_string(c.scheme)));
        }
    } else if (axes > 0) {
        throw UsageError("sweep", "sweep axes are only valid for the sweep command");
    }
    check_transmissions(c.sweep_transmissions, "sweep-T");

    const bool d_sweep = !c.sweep_dimensions.empty();
    const bool t_sweep = !c.sweep_transmissions.empty();
    if (!d_sweep && !c.d) {
        throw UsageError("d", "missing pixel count --d");
    }
    if (c.d && *c.d == 0) {
        throw UsageError("d", "pixel count must be at least 1");
    }
    if (c.pattern && c.transmissions) {
        throw UsageError("pattern", "give either --pattern or --transmissions, not both");
    }
    if (!t_sweep && !c.pattern && !c.transmissions) {
        throw UsageError("pattern", "missing --pattern or --transmissions");
    }
    if (t_sweep && (c.pattern || c.transmissions)) {
        throw UsageError("pattern", "a T sweep sets every pixel; drop --pattern/--transmissions");
    }
    const std::size_t expected = d_sweep ? 1 : c.d.value_or(0);
    const std::string length_note = d_sweep ? " (a d sweep replicates a single pixel)" : "";
    if (c.pattern) {
        if (c.pattern->find_first_not_of("01") != std::string::npos || c.pattern->empty()) {
            throw UsageError("pattern", "expected a string of 0/1, got '" + *c.pattern + "'");
        }
        if (c.pattern->size() != expected) {
            throw UsageError("pattern", "length " + std::to_string(c.pattern->size()) + " does not match d = " +
                                            std::to_string(expected) + length_note);
        }
    }
    if (c.transmissions) {
        check_transmissions(*c.transmissions, "transmissions");
        if (c.transmissions->size() != expected) {
            throw UsageError("transmissions", "length " + std::to_string(c.transmissions->size()) +
                                                  " does not match d = " + std::to_string(expected) + length_note);
        }
    }
    if (!is_single_pass(c.scheme) && c.cycles == 0) {
        throw UsageError("N", "need at least one cycle");
    }
    for (auto n : c.sweep_cycles) {
        if (n == 0) {
            throw UsageError("sweep-N", "cycle counts must be at least 1");
        }
    }
    for (auto d : c.sweep_dimensions) {
        if (d == 0) {
            throw UsageError("sweep-d", "pixel counts must be at least 1");
        }
    }
    const bool single_pixel = c.scheme == SchemeKind::ev_single_pass || c.scheme == SchemeKind::zeno_single_pixel;
    if (single_pixel && ((c.d && *c.d != 1) || d_sweep)) {
        throw UsageError("d", std::string(to_string(c.scheme)) + " images exactly one pixel");
    }
    if (c.command == Command::shots && c.shots == 0) {
        throw UsageError("shots", "need at least one shot");
    }
}

PixelPattern pattern_of(const RunConfig &c) {
    if (c.pattern) {
        return PixelPattern::from_bits(*c.pattern);
    }
    if (c.transmissions) {
        return PixelPattern::from_transmissions(*c.transmissions);
    }
    throw UsageError("pattern", "missing --pattern or --transmissions");
}

SchemeConfig scheme_config(const RunConfig &c) {
    return make_config(c.scheme, pattern_of(c), c.cycles);
}

}  // namespace ifm::cli
