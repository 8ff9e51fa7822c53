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

#include "ifm/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ifm {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

double lookup(const std::vector<DetectorProbability> &entries, std::string_view label, std::string_view what) {
    for (const auto &e : entries) {
        if (e.label == label) {
            return e.probability;
        }
    }
    throw std::out_of_range("AnalyticReport: no " + std::string(what) + " entry '" + std::string(label) + "'");
}

bool is_default_angle(const SchemeConfig &config) {
    return config.theta == default_rotation_angle(config.kind, config.cycles);
}

/// Table-4 style asymptote for one pixel; T = 1 is the pure-rotation row.
std::pair<double, double> zeno_pixel_asymptote(double t, std::size_t d, std::size_t cycles) {
    const double inv_d = 1.0 / static_cast<double>(d);
    const double n = static_cast<double>(cycles);
    if (t == 1.0) {
        return {0.0, inv_d};
    }
    const double r = std::sqrt(t);
    return {inv_d * (1.0 - (1.0 + r) / (1.0 - r) * kPi2 / (4 * n)), inv_d * t / ((1.0 - r) * (1.0 - r)) * kPi2 / (4 * n * n)};
}

void rename(std::vector<DetectorProbability> &entries, std::string_view from, std::string_view to) {
    for (auto &e : entries) {
        if (e.label == from) {
            e.label = std::string(to);
        }
    }
}

}  // namespace

double AnalyticReport::exact_probability(std::string_view label) const {
    if (label == kAbsorbedLabel && p_abs) {
        return *p_abs;
    }
    return lookup(exact, label, "exact");
}

double AnalyticReport::asymptotic_probability(std::string_view label) const {
    if (label == kAbsorbedLabel && p_abs_asymptotic) {
        return *p_abs_asymptotic;
    }
    return lookup(asymptotic, label, "asymptotic");
}

double AnalyticReport::exact_total() const {
    double sum = p_abs.value_or(0.0);
    for (const auto &e : exact) {
        sum += e.probability;
    }
    return sum;
}

Matrix2 Matrix2::operator*(const Matrix2 &rhs) const {
    const auto &a = m;
    const auto &b = rhs.m;
    return {{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
             a[2] * b[1] + a[3] * b[3]}};
}

std::array<double, 2> Matrix2::operator*(const std::array<double, 2> &v) const {
    return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
}

Matrix2 Matrix2::power(std::size_t n) const {
    Matrix2 result = identity();
    Matrix2 base = *this;
    while (n > 0) {
        if (n & 1) {
            result = result * base;
        }
        n >>= 1;
        if (n > 0) {
            base = base * base;
        }
    }
    return result;
}

Matrix2 SemiTransparentBlock::matrix() const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double r = std::sqrt(transmission);
    return {{c, -s, r * s, r * c}};
}

AnalyticReport ev_table(int occupancy) {
    if (occupancy != 0 && occupancy != 1) {
        throw std::invalid_argument("ev_table: occupancy must be 0 or 1");
    }
    AnalyticReport r;
    r.formula = "ev-table";
    if (occupancy == 0) {
        r.exact = {{"D0", 1.0}, {"D1", 0.0}};
        r.p_abs = 0.0;
    } else {
        r.exact = {{"D0", 0.25}, {"D1", 0.25}};
        r.p_abs = 0.5;
        r.efficiency = 0.25;
    }
    r.asymptotic = r.exact;
    r.p_abs_asymptotic = r.p_abs;
    return r;
}

AnalyticReport zeno_single_exact(std::size_t cycles, bool object_present) {
    if (cycles == 0) {
        throw std::invalid_argument("zeno_single_exact: need N >= 1");
    }
    const double n = static_cast<double>(cycles);
    const double theta = std::numbers::pi / (2 * n);
    AnalyticReport r;
    r.formula = "zeno-single";
    if (object_present) {
        const double ph = std::pow(std::cos(theta), 2 * n);
        r.exact = {{"Dh", ph}, {"Dv", 0.0}};
        r.p_abs = 1.0 - ph;
        r.asymptotic = {{"Dh", 1.0 - kPi2 / (4 * n)}, {"Dv", 0.0}};
        r.p_abs_asymptotic = kPi2 / (4 * n);
        r.efficiency = ph;
    } else {
        r.exact = {{"Dh", 0.0}, {"Dv", 1.0}};
        r.p_abs = 0.0;
        r.asymptotic = r.exact;
        r.p_abs_asymptotic = 0.0;
    }
    return r;
}

AnalyticReport multipixel_single_pass_table(const PixelPattern &pattern) {
    if (!pattern.is_binary()) {
        throw std::invalid_argument("multipixel_single_pass_table: pattern must be opaque/transparent");
    }
    const double d = static_cast<double>(pattern.size());
    AnalyticReport r;
    r.formula = "single-pass-table";
    for (std::size_t l = 0; l < pattern.size(); l++) {
        const bool opaque = pattern.occupancy(l) == 1;
        r.exact.push_back({single_pass_detector_label(l, false), opaque ? 1.0 / (4 * d) : 1.0 / d});
        r.exact.push_back({single_pass_detector_label(l, true), opaque ? 1.0 / (4 * d) : 0.0});
    }
    const double n_abs = static_cast<double>(pattern.opaque_count());
    r.p_abs = n_abs / (2 * d);
    if (n_abs > 0) {
        r.efficiency = 0.25;
    }
    r.asymptotic = r.exact;
    r.p_abs_asymptotic = r.p_abs;
    return r;
}

AnalyticReport single_pass_exact(const PixelPattern &pattern) {
    if (pattern.is_binary()) {
        return multipixel_single_pass_table(pattern);
    }
    const double d = static_cast<double>(pattern.size());
    AnalyticReport r;
    r.formula = "single-pass-semitransparent";
    double p_abs = 0;
    for (std::size_t l = 0; l < pattern.size(); l++) {
        const double t = pattern.transmission(l);
        const double s = std::sqrt(t);
        r.exact.push_back({single_pass_detector_label(l, false), (1 + s) * (1 + s) / (4 * d)});
        r.exact.push_back({single_pass_detector_label(l, true), (1 - s) * (1 - s) / (4 * d)});
        p_abs += (1 - t) / (2 * d);
    }
    r.p_abs = p_abs;
    return r;
}

double multipixel_zeno_survival(std::size_t d, std::size_t n_abs, std::size_t cycles, double theta) {
    if (d == 0 || n_abs > d) {
        throw std::invalid_argument("multipixel_zeno_survival: need 0 <= N_abs <= d, d >= 1");
    }
    const double c2n = std::pow(std::cos(theta), 2.0 * static_cast<double>(cycles));
    return 1.0 - static_cast<double>(n_abs) / static_cast<double>(d) * (1.0 - c2n);
}

double multipixel_zeno_survival_asymptotic(std::size_t d, std::size_t n_abs, std::size_t cycles) {
    if (d == 0 || n_abs > d || cycles == 0) {
        throw std::invalid_argument("multipixel_zeno_survival_asymptotic: need 0 <= N_abs <= d, N >= 1");
    }
    return 1.0 - static_cast<double>(n_abs) / static_cast<double>(d) * kPi2 / (4.0 * static_cast<double>(cycles));
}

double per_cycle_absorption(std::size_t d, std::size_t n_abs, std::size_t n, double theta) {
    if (d == 0 || n_abs > d) {
        throw std::invalid_argument("per_cycle_absorption: need 0 <= N_abs <= d, d >= 1");
    }
    const double c2n = std::pow(std::cos(theta), 2.0 * static_cast<double>(n));
    const double s2 = std::sin(theta) * std::sin(theta);
    const double a = static_cast<double>(n_abs);
    const double norm = static_cast<double>(d) - a + a * c2n;
    if (norm == 0.0) {
        return 0.0;
    }
    return a * c2n * s2 / norm;
}

AnalyticReport multipixel_zeno_table(const PixelPattern &pattern, std::size_t cycles, double theta) {
    if (!pattern.is_binary()) {
        throw std::invalid_argument("multipixel_zeno_table: pattern must be opaque/transparent");
    }
    if (cycles == 0) {
        throw std::invalid_argument("multipixel_zeno_table: need N >= 1");
    }
    const std::size_t d = pattern.size();
    const double inv_d = 1.0 / static_cast<double>(d);
    const double n = static_cast<double>(cycles);
    const double c2n = std::pow(std::cos(theta), 2 * n);
    const double rot_h = std::cos(n * theta) * std::cos(n * theta);
    const double rot_v = std::sin(n * theta) * std::sin(n * theta);

    AnalyticReport r;
    r.formula = "zeno-table";
    double p_abs = 0;
    for (std::size_t l = 0; l < d; l++) {
        const bool opaque = pattern.occupancy(l) == 1;
        r.exact.push_back({zeno_detector_label(l, Polarisation::H), inv_d * (opaque ? c2n : rot_h)});
        r.exact.push_back({zeno_detector_label(l, Polarisation::V), opaque ? 0.0 : inv_d * rot_v});
        r.asymptotic.push_back(
            {zeno_detector_label(l, Polarisation::H), opaque ? inv_d * (1.0 - kPi2 / (4 * n)) : 0.0});
        r.asymptotic.push_back({zeno_detector_label(l, Polarisation::V), opaque ? 0.0 : inv_d});
        if (opaque) {
            p_abs += inv_d * (1.0 - c2n);
        }
    }
    const double n_abs = static_cast<double>(pattern.opaque_count());
    r.p_abs = p_abs;
    r.p_abs_asymptotic = n_abs * inv_d * kPi2 / (4 * n);
    if (n_abs > 0) {
        r.efficiency = c2n;
    }
    return r;
}

AnalyticReport semitransparent_exact(std::size_t cycles, double theta, std::span<const double> transmissions) {
    validate_transmissions(transmissions);
    if (transmissions.empty()) {
        throw std::invalid_argument("semitransparent_exact: empty transmission list");
    }
    const double amp0 = 1.0 / std::sqrt(static_cast<double>(transmissions.size()));
    AnalyticReport r;
    r.formula = "semitransparent-blocks";
    double survival = 0;
    for (std::size_t l = 0; l < transmissions.size(); l++) {
        auto block = SemiTransparentBlock{transmissions[l], theta}.matrix().power(cycles);
        auto c = block * std::array<double, 2>{amp0, 0.0};
        const double ph = c[0] * c[0];
        const double pv = c[1] * c[1];
        r.exact.push_back({zeno_detector_label(l, Polarisation::H), ph});
        r.exact.push_back({zeno_detector_label(l, Polarisation::V), pv});
        survival += ph + pv;
    }
    r.p_abs = std::max(0.0, 1.0 - survival);
    return r;
}

AnalyticReport semitransparent_asymptotic(std::size_t cycles, std::span<const double> transmissions) {
    validate_transmissions(transmissions);
    if (transmissions.empty() || cycles == 0) {
        throw std::invalid_argument("semitransparent_asymptotic: need N >= 1 and at least one pixel");
    }
    AnalyticReport r;
    r.formula = "semitransparent-asymptotic";
    double survival = 0;
    for (std::size_t l = 0; l < transmissions.size(); l++) {
        if (transmissions[l] >= 1.0) {
            throw std::invalid_argument("semitransparent_asymptotic: T_" + std::to_string(l) +
                                        " = 1 is a pole of (1 + sqrt T)/(1 - sqrt T); use semitransparent_exact");
        }
        auto [ph, pv] = zeno_pixel_asymptote(transmissions[l], transmissions.size(), cycles);
        r.asymptotic.push_back({zeno_detector_label(l, Polarisation::H), ph});
        r.asymptotic.push_back({zeno_detector_label(l, Polarisation::V), pv});
        survival += ph + pv;
    }
    r.p_abs_asymptotic = 1.0 - survival;
    return r;
}

AnalyticReport with_swapped_polarisation(AnalyticReport report) {
    auto swap = [](std::vector<DetectorProbability> &entries) {
        for (auto &e : entries) {
            auto &s = e.label;
            if (s == "Dh" || s == "Dv") {
                s[1] = s[1] == 'h' ? 'v' : 'h';
            } else if (s.size() > 2 && s[s.size() - 2] == '_' && (s.back() == 'h' || s.back() == 'v')) {
                s.back() = s.back() == 'h' ? 'v' : 'h';
            }
        }
    };
    swap(report.exact);
    swap(report.asymptotic);
    return report;
}

AnalyticReport analytic_report(const SchemeConfig &config) {
    validate(config);
    const auto &pattern = config.pattern;
    const std::size_t d = config.dimension();
    switch (config.kind) {
        case SchemeKind::ev_single_pass: {
            if (pattern.is_binary()) {
                return ev_table(pattern.occupancy(0));
            }
            auto r = single_pass_exact(pattern);
            rename(r.exact, single_pass_detector_label(0, false), "D0");
            rename(r.exact, single_pass_detector_label(0, true), "D1");
            return r;
        }
        case SchemeKind::multipixel_single_pass:
            return single_pass_exact(pattern);
        case SchemeKind::zeno_single_pixel:
        case SchemeKind::multipixel_zeno:
        case SchemeKind::semitransparent_zeno:
        case SchemeKind::michelson_zeno: {
            // One Michelson cycle rotates twice.
            const double cycle_angle = is_michelson(config.kind) ? 2 * config.theta : config.theta;
            AnalyticReport r;
            if (pattern.is_binary()) {
                r = multipixel_zeno_table(pattern, config.cycles, cycle_angle);
            } else {
                r = semitransparent_exact(config.cycles, cycle_angle, pattern.transmissions());
                if (is_default_angle(config)) {
                    double survival = 0;
                    for (std::size_t l = 0; l < d; l++) {
                        auto [ph, pv] = zeno_pixel_asymptote(pattern.transmission(l), d, config.cycles);
                        r.asymptotic.push_back({zeno_detector_label(l, Polarisation::H), ph});
                        r.asymptotic.push_back({zeno_detector_label(l, Polarisation::V), pv});
                        survival += ph + pv;
                    }
                    r.p_abs_asymptotic = 1.0 - survival;
                }
            }
            if (!is_default_angle(config)) {
                r.asymptotic.clear();
                r.p_abs_asymptotic.reset();
            }
            if (config.kind == SchemeKind::zeno_single_pixel) {
                for (auto *entries : {&r.exact, &r.asymptotic}) {
                    rename(*entries, zeno_detector_label(0, Polarisation::H), "Dh");
                    rename(*entries, zeno_detector_label(0, Polarisation::V), "Dv");
                }
            }
            if (is_michelson(config.kind)) {
                r = with_swapped_polarisation(std::move(r));
            }
            return r;
        }
    }
    throw std::invalid_argument("analytic_report: unknown scheme kind");
}

}  // namespace ifm
