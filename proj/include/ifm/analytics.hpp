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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifm/detection.hpp"
#include "ifm/pixel_pattern.hpp"
#include "ifm/schemes.hpp"

namespace ifm {

/// Closed-form detection probabilities for one configuration.
///
/// `exact` entries plus `p_abs` sum to one. `asymptotic` holds the leading
/// large-N expressions and is empty where none apply. `efficiency` is the
/// probability of an object-revealing click given that the object (or, for
/// multi-pixel objects, a given opaque pixel) is present.
struct AnalyticReport {
    std::string formula;
    std::vector<DetectorProbability> exact;
    std::vector<DetectorProbability> asymptotic;
    std::optional<double> p_abs;
    std::optional<double> p_abs_asymptotic;
    std::optional<double> efficiency;

    double exact_probability(std::string_view label) const;
    double asymptotic_probability(std::string_view label) const;
    /// Sum of exact entries plus p_abs.
    double exact_total() const;
};

/// Real 2x2 matrix, row-major.
struct Matrix2 {
    std::array<double, 4> m{1, 0, 0, 1};

    static Matrix2 identity() { return {}; }
    Matrix2 operator*(const Matrix2 &rhs) const;
    std::array<double, 2> operator*(const std::array<double, 2> &v) const;
    /// Exponentiation by squaring.
    Matrix2 power(std::size_t n) const;
};

/// One OAM block of a Zeno cycle: rotation by theta followed by the
/// sqrt(T)-attenuated V arm, acting on (c_h, c_v).
struct SemiTransparentBlock {
    double transmission;
    double theta;

    Matrix2 matrix() const;
};

AnalyticReport ev_table(int occupancy);

/// Single-pixel Zeno cavity with theta = pi/2N.
AnalyticReport zeno_single_exact(std::size_t cycles, bool object_present = true);

/// Binary patterns only.
AnalyticReport multipixel_single_pass_table(const PixelPattern &pattern);

/// Any pattern; reduces to the table for binary ones.
AnalyticReport single_pass_exact(const PixelPattern &pattern);

/// 1 - (N_abs/d)(1 - cos^{2N} theta).
double multipixel_zeno_survival(std::size_t d, std::size_t n_abs, std::size_t cycles, double theta);

/// 1 - (N_abs/d) pi^2/4N, the theta = pi/2N large-N limit.
double multipixel_zeno_survival_asymptotic(std::size_t d, std::size_t n_abs, std::size_t cycles);

/// Conditional absorption probability during cycle n (counting from 0),
/// given survival of the first n cycles.
double per_cycle_absorption(std::size_t d, std::size_t n_abs, std::size_t n, double theta);

/// Binary patterns: exact per-detector values at angle theta plus the
/// theta = pi/2N asymptotic table.
AnalyticReport multipixel_zeno_table(const PixelPattern &pattern, std::size_t cycles, double theta);

/// Per-pixel block powers m_l^N applied to (1/sqrt d)(1, 0).
AnalyticReport semitransparent_exact(std::size_t cycles, double theta, std::span<const double> transmissions);

/// Leading-order large-N probabilities at theta = pi/2N. Every T must lie in
/// [0, 1); T = 1 sits on the pole of (1 + sqrt T)/(1 - sqrt T).
AnalyticReport semitransparent_asymptotic(std::size_t cycles, std::span<const double> transmissions);

/// Closed-form counterpart of run_scheme for any valid configuration. The
/// Michelson cavity reports the Mach-Zehnder values with H and V exchanged.
AnalyticReport analytic_report(const SchemeConfig &config);

/// Exchanges "_h" and "_v" detector suffixes.
AnalyticReport with_swapped_polarisation(AnalyticReport report);

}  // namespace ifm
