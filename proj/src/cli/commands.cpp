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

#include "ifm/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ifm/analytics.hpp"
#include "ifm/experiment.hpp"
#include "ifm/kernels.hpp"
#include "ifm/verify.hpp"

namespace ifm::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kCompletenessTolerance = 1e-10;
constexpr double kOracleTolerance = 1e-9;

class InvariantFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

ordered_json number(double x) {
    return round15(x);
}

ordered_json optional_number(const std::optional<double> &x) {
    return x ? number(*x) : ordered_json(nullptr);
}

std::string csv_number(const std::optional<double> &x) {
    return x ? format_number(*x) : std::string();
}

ordered_json probability_object(std::span<const DetectorProbability> entries) {
    ordered_json j = ordered_json::object();
    for (const auto &e : entries) {
        j[e.label] = number(e.probability);
    }
    return j;
}

/// 'h' or 'v' for a Zeno-style detector label, 0 otherwise.
char polarisation_of(std::string_view label) {
    if (label == "Dh" || label.ends_with("_h")) {
        return 'h';
    }
    if (label == "Dv" || label.ends_with("_v")) {
        return 'v';
    }
    return 0;
}

std::optional<double> polarisation_total(std::span<const DetectorProbability> entries, char pol) {
    if (entries.empty()) {
        return std::nullopt;
    }
    double sum = 0;
    for (const auto &e : entries) {
        if (polarisation_of(e.label) == pol) {
            sum += e.probability;
        }
    }
    return sum;
}

std::optional<double> gap(const std::optional<double> &a, const std::optional<double> &b) {
    if (!a || !b) {
        return std::nullopt;
    }
    return std::abs(*a - *b);
}

void check_completeness(const DetectionDistribution &dist, const AnalyticReport &analytic) {
    const double total = dist.total();
    if (std::abs(total - 1.0) > kCompletenessTolerance) {
        throw InvariantFailure("completeness: detectors + p_abs = " + format_number(total));
    }
    if (analytic.p_abs && std::abs(analytic.exact_total() - 1.0) > kCompletenessTolerance) {
        throw InvariantFailure("completeness: closed-form total = " + format_number(analytic.exact_total()));
    }
}

double max_oracle_deviation(const DetectionDistribution &dist, const AnalyticReport &analytic) {
    double worst = 0;
    for (const auto &e : analytic.exact) {
        worst = std::max(worst, std::abs(dist.probability(e.label) - e.probability));
    }
    if (analytic.p_abs) {
        worst = std::max(worst, std::abs(dist.p_abs - *analytic.p_abs));
    }
    return worst;
}

ordered_json analytic_json(const AnalyticReport &a) {
    ordered_json j;
    j["formula"] = a.formula;
    j["exact"] = probability_object(a.exact);
    j["asymptotic"] = a.asymptotic.empty() ? ordered_json(nullptr) : probability_object(a.asymptotic);
    j["p_abs"] = optional_number(a.p_abs);
    j["p_abs_asymptotic"] = optional_number(a.p_abs_asymptotic);
    j["efficiency"] = optional_number(a.efficiency);
    return j;
}

std::optional<double> lookup(std::span<const DetectorProbability> entries, std::string_view label) {
    for (const auto &e : entries) {
        if (e.label == label) {
            return e.probability;
        }
    }
    return std::nullopt;
}

std::string_view verdict_name(PixelVerdict v) {
    switch (v) {
        case PixelVerdict::opaque:
            return "opaque";
        case PixelVerdict::transparent:
            return "transparent";
        case PixelVerdict::unknown:
            return "unknown";
    }
    return "unknown";
}

std::vector<SchemeConfig> sweep_points(const RunConfig &c) {
    std::vector<SchemeConfig> points;
    if (!c.sweep_cycles.empty()) {
        const PixelPattern pattern = pattern_of(c);
        for (std::size_t n : c.sweep_cycles) {
            points.push_back(make_config(c.scheme, pattern, n));
        }
    } else if (!c.sweep_dimensions.empty()) {
        const double t = pattern_of(c).transmission(0);
        for (std::size_t d : c.sweep_dimensions) {
            points.push_back(make_config(c.scheme, PixelPattern::from_transmissions(std::vector<double>(d, t)), c.cycles));
        }
    } else {
        for (double t : c.sweep_transmissions) {
            points.push_back(make_config(c.scheme, PixelPattern::from_transmissions(std::vector<double>(*c.d, t)), c.cycles));
        }
    }
    return points;
}

}  // namespace

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

double round15(double x) {
    return std::stod(format_number(x));
}

int cmd_run(const RunConfig &config, std::ostream &out, std::ostream &) {
    const SchemeConfig sc = scheme_config(config);
    const SchemeRun run = run_scheme(sc);
    const AnalyticReport analytic = analytic_report(sc);
    check_completeness(run.distribution, analytic);
    const double deviation = max_oracle_deviation(run.distribution, analytic);
    if (deviation > kOracleTolerance) {
        throw InvariantFailure("oracle-equivalence: simulator and closed form differ by " + format_number(deviation));
    }

    const auto &dist = run.distribution;
    if (config.format == OutputFormat::csv) {
        out << "label,probability,exact,asymptotic\n";
        for (const auto &e : dist.detectors) {
            out << e.label << ',' << format_number(e.probability) << ',' << csv_number(lookup(analytic.exact, e.label))
                << ',' << csv_number(lookup(analytic.asymptotic, e.label)) << '\n';
        }
        out << kAbsorbedLabel << ',' << format_number(dist.p_abs) << ',' << csv_number(analytic.p_abs) << ','
            << csv_number(analytic.p_abs_asymptotic) << '\n';
        return kExitOk;
    }

    ordered_json j;
    j["config"] = config_to_json(config);
    j["scheme"] = std::string(to_string(sc.kind));
    j["d"] = sc.dimension();
    j["N"] = sc.cycles;
    j["theta"] = number(sc.theta);
    j["detectors"] = probability_object(dist.detectors);
    j["p_abs"] = number(dist.p_abs);
    j["p_nabs"] = number(1.0 - dist.p_abs);
    j["total"] = number(dist.total());
    j["analytic"] = analytic_json(analytic);
    j["max_oracle_deviation"] = number(deviation);
    ordered_json trace = ordered_json::array();
    for (const auto &rec : run.trace.cycles) {
        trace.push_back({{"n", rec.cycle}, {"survival", number(rec.survival)}, {"p_abs", number(rec.absorption)}});
    }
    j["trace"] = std::move(trace);
    out << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_sweep(const RunConfig &config, std::ostream &out, std::ostream &) {
    const std::vector<SchemeConfig> points = sweep_points(config);
    const std::vector<SchemeRun> runs = kernels::run_batch_parallel(points);

    struct Row {
        const SchemeConfig *point;
        double p_abs, p_h, p_v;
        AnalyticReport analytic;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < points.size(); i++) {
        const auto &dist = runs[i].distribution;
        AnalyticReport analytic = analytic_report(points[i]);
        check_completeness(dist, analytic);
        rows.push_back({&points[i], dist.p_abs, *polarisation_total(dist.detectors, 'h'),
                        *polarisation_total(dist.detectors, 'v'), std::move(analytic)});
    }

    auto transmission_of = [](const PixelPattern &p) -> std::optional<double> {
        for (std::size_t l = 1; l < p.size(); l++) {
            if (p.transmission(l) != p.transmission(0)) {
                return std::nullopt;
            }
        }
        return p.transmission(0);
    };

    if (config.format == OutputFormat::json) {
        ordered_json j;
        j["config"] = config_to_json(config);
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < rows.size(); i++) {
            const Row &r = rows[i];
            const auto ph_exact = polarisation_total(r.analytic.exact, 'h');
            const auto pv_exact = polarisation_total(r.analytic.exact, 'v');
            const auto ph_asym = polarisation_total(r.analytic.asymptotic, 'h');
            const auto pv_asym = polarisation_total(r.analytic.asymptotic, 'v');
            ordered_json row;
            row["index"] = i;
            row["d"] = r.point->dimension();
            row["N"] = r.point->cycles;
            row["T"] = optional_number(transmission_of(r.point->pattern));
            row["theta"] = number(r.point->theta);
            row["p_abs"] = number(r.p_abs);
            row["p_abs_exact"] = optional_number(r.analytic.p_abs);
            row["p_abs_asymptotic"] = optional_number(r.analytic.p_abs_asymptotic);
            row["p_abs_gap"] = optional_number(gap(r.analytic.p_abs, r.analytic.p_abs_asymptotic));
            row["p_h"] = number(r.p_h);
            row["p_h_exact"] = optional_number(ph_exact);
            row["p_h_asymptotic"] = optional_number(ph_asym);
            row["p_h_gap"] = optional_number(gap(ph_exact, ph_asym));
            row["p_v"] = number(r.p_v);
            row["p_v_exact"] = optional_number(pv_exact);
            row["p_v_asymptotic"] = optional_number(pv_asym);
            row["p_v_gap"] = optional_number(gap(pv_exact, pv_asym));
            arr.push_back(std::move(row));
        }
        j["rows"] = std::move(arr);
        out << j.dump(2) << '\n';
        return kExitOk;
    }

    out << "index,d,N,T,theta,p_abs,p_abs_exact,p_abs_asymptotic,p_abs_gap,p_h,p_h_exact,p_h_asymptotic,p_h_gap,"
           "p_v,p_v_exact,p_v_asymptotic,p_v_gap\n";
    for (std::size_t i = 0; i < rows.size(); i++) {
        const Row &r = rows[i];
        const auto ph_exact = polarisation_total(r.analytic.exact, 'h');
        const auto pv_exact = polarisation_total(r.analytic.exact, 'v');
        const auto ph_asym = polarisation_total(r.analytic.asymptotic, 'h');
        const auto pv_asym = polarisation_total(r.analytic.asymptotic, 'v');
        out << i << ',' << r.point->dimension() << ',' << r.point->cycles << ',' << csv_number(transmission_of(r.point->pattern))
            << ',' << format_number(r.point->theta) << ',' << format_number(r.p_abs) << ','
            << csv_number(r.analytic.p_abs) << ',' << csv_number(r.analytic.p_abs_asymptotic) << ','
            << csv_number(gap(r.analytic.p_abs, r.analytic.p_abs_asymptotic)) << ',' << format_number(r.p_h) << ','
            << csv_number(ph_exact) << ',' << csv_number(ph_asym) << ',' << csv_number(gap(ph_exact, ph_asym)) << ','
            << format_number(r.p_v) << ',' << csv_number(pv_exact) << ',' << csv_number(pv_asym) << ','
            << csv_number(gap(pv_exact, pv_asym)) << '\n';
    }
    return kExitOk;
}

int cmd_shots(const RunConfig &config, std::ostream &out, std::ostream &) {
    const SchemeConfig sc = scheme_config(config);
    const SchemeRun run = run_scheme(sc);
    const bool binary = sc.pattern.is_binary();

    if (config.format == OutputFormat::csv) {
        const ShotSample sample = sample_shots(run.distribution, config.shots, config.seed);
        write_shot_csv(out, sample.records);
        if (binary && !reconstruct_pattern(sample.counts, sc).matches(sc.pattern)) {
            return kExitMismatch;
        }
        return kExitOk;
    }

    const ClickCounts counts = count_shots(run.distribution, config.shots, config.seed);
    // Too few shots for a normal approximation: z-scores are left out.
    const std::optional<StatisticalCheck> stats =
        counts.total() >= 100 ? std::optional(statistical_check(counts, run.distribution)) : std::nullopt;
    const ReconstructedImage image =
        binary || is_single_pass(sc.kind) ? reconstruct_pattern(counts, sc) : estimate_transmissions(counts, sc);

    ordered_json j;
    j["config"] = config_to_json(config);
    ordered_json c = ordered_json::object();
    for (const auto &label : counts.labels()) {
        c[label] = counts.count(label);
    }
    c[std::string(kAbsorbedLabel)] = counts.absorbed();
    j["counts"] = std::move(c);
    j["total"] = counts.total();
    ordered_json z = nullptr;
    std::size_t impossible = 0;
    if (stats) {
        z = ordered_json::array();
        for (const auto &e : stats->entries) {
            z.push_back({{"label", e.label},
                         {"expected", number(e.expected)},
                         {"frequency", number(e.frequency)},
                         {"z", optional_number(e.z)}});
            impossible += e.impossible_violation ? 1 : 0;
        }
    }
    j["z_scores"] = std::move(z);
    j["max_abs_z"] = stats ? number(stats->max_abs_z()) : ordered_json(nullptr);
    j["impossible_outcomes"] = impossible;
    j["image"] = image.str();
    ordered_json pixels = ordered_json::array();
    for (std::size_t l = 0; l < image.pixels.size(); l++) {
        const auto &p = image.pixels[l];
        ordered_json t = nullptr;
        if (p.transmission) {
            t = {{"value", number(p.transmission->value)},
                 {"sigma", number(p.transmission->sigma)},
                 {"lower", number(p.transmission->lower)},
                 {"upper", number(p.transmission->upper)}};
        }
        pixels.push_back({{"pixel", l}, {"verdict", std::string(verdict_name(p.verdict))}, {"transmission", t}});
    }
    j["pixels"] = std::move(pixels);
    j["ground_truth"] = binary ? ordered_json(sc.pattern.to_bits()) : ordered_json(nullptr);
    const bool matches = binary && image.matches(sc.pattern);
    j["reconstruction_matches"] = binary ? ordered_json(matches) : ordered_json(nullptr);
    out << j.dump(2) << '\n';
    return binary && !matches ? kExitMismatch : kExitOk;
}

int cmd_verify(const RunConfig &config, std::ostream &out, std::ostream &err) {
    const std::vector<CheckResult> checks = run_verification();
    bool all = true;
    if (config.format == OutputFormat::csv) {
        out << "check,status,detail\n";
        for (const auto &c : checks) {
            out << c.name << ',' << (c.passed ? "pass" : "fail") << ",\"" << c.detail << "\"\n";
            all = all && c.passed;
        }
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto &c : checks) {
            arr.push_back({{"check", c.name}, {"status", c.passed ? "pass" : "fail"}, {"detail", c.detail}});
            all = all && c.passed;
        }
        ordered_json j;
        j["checks"] = std::move(arr);
        j["passed"] = all;
        out << j.dump(2) << '\n';
    }
    for (const auto &c : checks) {
        if (!c.passed) {
            err << "invariant failed: " << c.name << ": " << c.detail << '\n';
        }
    }
    return all ? kExitOk : kExitInvariant;
}

int main_with_args(std::span<const std::string> args, std::ostream &out, std::ostream &err) {
    RunConfig config;
    try {
        config = parse_config(args);
    } catch (const UsageError &e) {
        if (e.field() == "help") {
            out << std::string_view(e.what()).substr(6);
            return kExitOk;
        }
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ofstream file;
    if (config.out) {
        file.open(*config.out);
        if (!file) {
            err << "error: cannot open '" << *config.out << "' for writing\n";
            return kExitFailure;
        }
    }
    std::ostream &sink = config.out ? static_cast<std::ostream &>(file) : out;
    try {
        switch (config.command) {
            case Command::run:
                return cmd_run(config, sink, err);
            case Command::sweep:
                return cmd_sweep(config, sink, err);
            case Command::shots:
                return cmd_shots(config, sink, err);
            case Command::verify:
                return cmd_verify(config, sink, err);
        }
    } catch (const InvariantFailure &e) {
        err << "invariant failed: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace ifm::cli
