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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ifm/schemes.hpp"
#include "test_util.hpp"

using namespace ifm;
using std::numbers::pi;

namespace {

double max_gap(const DetectionDistribution &a, const DetectionDistribution &b) {
    double worst = std::abs(a.p_abs - b.p_abs);
    for (const auto &e : a.detectors) {
        worst = std::max(worst, std::abs(e.probability - b.probability(e.label)));
    }
    return worst;
}

std::string swap_hv(std::string label) {
    if (label.ends_with("_h")) {
        label.back() = 'v';
    } else if (label.ends_with("_v")) {
        label.back() = 'h';
    }
    return label;
}

}  // namespace

TEST_CASE("scheme names round-trip") {
    for (auto k : {SchemeKind::ev_single_pass, SchemeKind::zeno_single_pixel, SchemeKind::multipixel_single_pass,
                   SchemeKind::multipixel_zeno, SchemeKind::michelson_zeno, SchemeKind::semitransparent_zeno}) {
        CHECK(parse_scheme_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_scheme_kind("zeno"), std::invalid_argument);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(validate(make_config(SchemeKind::ev_single_pass, PixelPattern::from_bits("10"))),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_config(SchemeKind::multipixel_zeno, PixelPattern::from_bits("10"), 0), std::invalid_argument);
    auto c = make_config(SchemeKind::multipixel_zeno, PixelPattern::from_bits("10"), 4);
    CHECK(c.theta == doctest::Approx(pi / 8));
    CHECK(make_config(SchemeKind::michelson_zeno, PixelPattern::from_bits("10"), 4).theta == doctest::Approx(pi / 16));
}

TEST_CASE("EV single pass") {
    auto blocked = run_scheme(make_config(SchemeKind::ev_single_pass, PixelPattern::from_bits("1"))).distribution;
    CHECK(blocked.probability("D0") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(blocked.probability("D1") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(blocked.p_abs == doctest::Approx(0.5).epsilon(1e-12));
    auto open = run_scheme(make_config(SchemeKind::ev_single_pass, PixelPattern::from_bits("0"))).distribution;
    CHECK(open.probability("D0") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(open.probability("D1") < 1e-12);
    CHECK(open.p_abs < 1e-12);
}

TEST_CASE("single pixel Zeno follows cos^2N") {
    for (std::size_t n : {1, 5, 50}) {
        auto run = run_scheme(make_config(SchemeKind::zeno_single_pixel, PixelPattern::from_bits("1"), n));
        CHECK(run.distribution.probability("Dh") == doctest::Approx(std::pow(std::cos(pi / (2.0 * n)), 2.0 * n)));
        CHECK(run.trace.cycles.size() == n);
        auto open = run_scheme(make_config(SchemeKind::zeno_single_pixel, PixelPattern::from_bits("0"), n));
        CHECK(open.distribution.probability("Dv") == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("multipixel Zeno approaches the ideal output state") {
    auto pattern = PixelPattern::from_bits("1001");
    double previous = 0;
    for (std::size_t n : {10, 100, 1000}) {
        auto config = make_config(SchemeKind::multipixel_zeno, pattern, n);
        auto run = run_scheme(config);
        double fidelity = overlap_probability(run.final_state, final_state_ideal(config));
        CHECK(fidelity > previous);
        previous = fidelity;
    }
    CHECK(previous > 0.99);
}

TEST_CASE("survival never increases along the trace") {
    std::mt19937_64 rng(23);
    for (auto kind : {SchemeKind::multipixel_zeno, SchemeKind::semitransparent_zeno, SchemeKind::michelson_zeno}) {
        auto pattern = ifm::testing::random_transmissions(3, rng);
        auto run = run_scheme(make_config(kind, pattern, 30));
        double last = 1.0;
        for (const auto &rec : run.trace.cycles) {
            CHECK(rec.survival <= last + 1e-15);
            CHECK(rec.absorption >= -1e-15);
            last = rec.survival;
        }
        CHECK(run.distribution.total() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("all-transparent object absorbs nothing") {
    for (auto kind : {SchemeKind::multipixel_single_pass, SchemeKind::multipixel_zeno, SchemeKind::michelson_zeno}) {
        auto run = run_scheme(make_config(kind, PixelPattern::transparent(3), 10));
        CHECK(run.distribution.p_abs < 1e-13);
    }
}

TEST_CASE("composed and OAM-diagonal encoders agree") {
    std::mt19937_64 rng(29);
    for (auto kind : {SchemeKind::multipixel_single_pass, SchemeKind::semitransparent_zeno, SchemeKind::michelson_zeno}) {
        auto config = make_config(kind, ifm::testing::random_transmissions(4, rng), 12);
        auto diag = config;
        diag.encoder = EncoderForm::oam_diagonal;
        CHECK(max_gap(run_scheme(config).distribution, run_scheme(diag).distribution) < 1e-12);
    }
}

TEST_CASE("Michelson matches Mach-Zehnder with H and V exchanged") {
    std::mt19937_64 rng(31);
    for (std::size_t d = 1; d <= 3; d++) {
        for (std::size_t n : {1, 7, 20}) {
            auto pattern = ifm::testing::random_bits(d, rng);
            auto mz = run_scheme(make_config(SchemeKind::multipixel_zeno, pattern, n)).distribution;
            auto mi = run_scheme(make_config(SchemeKind::michelson_zeno, pattern, n)).distribution;
            CHECK(std::abs(mz.p_abs - mi.p_abs) < 1e-10);
            for (const auto &e : mz.detectors) {
                CHECK(std::abs(e.probability - mi.probability(swap_hv(e.label))) < 1e-10);
            }
        }
    }
}

TEST_CASE("detector labels") {
    CHECK(zeno_detector_label(3, Polarisation::H) == "D3_h");
    CHECK(zeno_detector_label(0, Polarisation::V) == "D0_v");
    CHECK(single_pass_detector_label(2, false) == "D0_2");
    CHECK(single_pass_detector_label(2, true) == "Dd_2");
}

TEST_CASE("multipixel single pass table roles") {
    auto dist = run_scheme(make_config(SchemeKind::multipixel_single_pass, PixelPattern::from_bits("10"))).distribution;
    const double d = 2;
    CHECK(dist.probability("D0_0") == doctest::Approx(1 / (4 * d)));
    CHECK(dist.probability("Dd_0") == doctest::Approx(1 / (4 * d)));
    CHECK(dist.probability("D0_1") == doctest::Approx(1 / d));
    CHECK(dist.probability("Dd_1") < 1e-15);
    CHECK(dist.p_abs == doctest::Approx(1 / (2 * d)));
}
