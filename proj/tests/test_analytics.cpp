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

#include "ifm/analytics.hpp"
#include "test_util.hpp"

using namespace ifm;
using std::numbers::pi;

namespace {

// Cycle-by-cycle iteration of one pixel's (h, v) amplitudes, no matrix powers.
std::pair<double, double> iterate_pixel(double t, double theta, std::size_t n, double amp0) {
    double h = amp0;
    double v = 0;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (std::size_t k = 0; k < n; k++) {
        const double h2 = c * h - s * v;
        const double v2 = std::sqrt(t) * (s * h + c * v);
        h = h2;
        v = v2;
    }
    return {h * h, v * v};
}

}  // namespace

TEST_CASE("matrix power by squaring matches repeated multiplication") {
    Matrix2 m{{0.3, -0.8, 0.5, 0.1}};
    Matrix2 naive = Matrix2::identity();
    for (std::size_t n = 0; n <= 70; n++) {
        auto fast = m.power(n);
        for (int k = 0; k < 4; k++) {
            CHECK(fast.m[k] == doctest::Approx(naive.m[k]).epsilon(1e-12).scale(1.0));
        }
        naive = naive * m;
    }
}

TEST_CASE("EV table") {
    auto blocked = ev_table(1);
    CHECK(blocked.exact_probability("D0") == 0.25);
    CHECK(blocked.exact_probability("D1") == 0.25);
    CHECK(*blocked.p_abs == 0.5);
    CHECK(*blocked.efficiency == 0.25);
    CHECK(blocked.exact_total() == 1.0);
    auto open = ev_table(0);
    CHECK(open.exact_probability("D0") == 1.0);
    CHECK_THROWS_AS(ev_table(2), std::invalid_argument);
    CHECK_THROWS_AS(open.exact_probability("D7"), std::out_of_range);
}

TEST_CASE("single pixel Zeno closed form") {
    auto r = zeno_single_exact(100);
    CHECK(r.exact_probability("Dh") == doctest::Approx(std::pow(std::cos(pi / 200), 200)));
    CHECK(r.asymptotic_probability("Dh") == doctest::Approx(1 - pi * pi / 400));
    CHECK(r.exact_total() == doctest::Approx(1.0));
    auto open = zeno_single_exact(100, false);
    CHECK(open.exact_probability("Dv") == doctest::Approx(1.0));
}

TEST_CASE("multipixel survival formula") {
    for (std::size_t d = 1; d <= 6; d++) {
        for (std::size_t a = 0; a <= d; a++) {
            for (std::size_t n : {1, 10, 64}) {
                const double theta = pi / (2.0 * n);
                const double expected = 1.0 - (double(a) / double(d)) * (1.0 - std::pow(std::cos(theta), 2.0 * n));
                CHECK(multipixel_zeno_survival(d, a, n, theta) == doctest::Approx(expected).epsilon(1e-14));
            }
        }
    }
    CHECK_THROWS_AS(multipixel_zeno_survival(2, 3, 10, 0.1), std::invalid_argument);
}

TEST_CASE("per-cycle absorption telescopes to the survival") {
    for (std::size_t d : {1, 3, 8}) {
        for (std::size_t a = 0; a <= d; a++) {
            const std::size_t n = 40;
            const double theta = pi / (2.0 * n);
            double product = 1.0;
            for (std::size_t j = 0; j < n; j++) {
                product *= 1.0 - per_cycle_absorption(d, a, j, theta);
            }
            CHECK(product == doctest::Approx(multipixel_zeno_survival(d, a, n, theta)).epsilon(1e-12));
        }
    }
}

TEST_CASE("Zeno table asymptote") {
    const std::size_t n = 10000;
    auto r = multipixel_zeno_table(PixelPattern::from_bits("1100"), n, pi / (2.0 * n));
    CHECK(r.asymptotic_probability("D0_h") == doctest::Approx(0.25 * (1 - pi * pi / (4.0 * n))));
    CHECK(r.asymptotic_probability("D2_v") == 0.25);
    CHECK(r.exact_probability("D0_v") == 0.0);
    CHECK(r.exact_probability("D2_h") < 1e-30);
    CHECK(*r.p_abs_asymptotic == doctest::Approx(0.5 * pi * pi / (4.0 * n)));
    CHECK(r.exact_total() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(multipixel_zeno_table(PixelPattern::from_transmissions({0.5}), n, 0.1), std::invalid_argument);
}

TEST_CASE("semitransparent blocks match cycle-by-cycle iteration") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; trial++) {
        const std::size_t d = 1 + rng() % 4;
        const std::size_t n = 1 + rng() % 200;
        auto pattern = ifm::testing::random_transmissions(d, rng);
        const double theta = pi / (2.0 * n);
        auto r = semitransparent_exact(n, theta, pattern.transmissions());
        for (std::size_t l = 0; l < d; l++) {
            auto [ph, pv] = iterate_pixel(pattern.transmission(l), theta, n, 1.0 / std::sqrt(double(d)));
            CHECK(std::abs(r.exact_probability("D" + std::to_string(l) + "_h") - ph) < 1e-12);
            CHECK(std::abs(r.exact_probability("D" + std::to_string(l) + "_v") - pv) < 1e-12);
        }
        CHECK(r.exact_total() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("semitransparent blocks reduce to the binary table") {
    const std::size_t n = 50;
    const double theta = pi / (2.0 * n);
    std::vector<double> t{0.0, 1.0, 0.0};
    auto blocks = semitransparent_exact(n, theta, t);
    auto table = multipixel_zeno_table(PixelPattern::from_transmissions(t), n, theta);
    for (const auto &e : table.exact) {
        CHECK(std::abs(blocks.exact_probability(e.label) - e.probability) < 1e-14);
    }
}

TEST_CASE("semitransparent asymptote") {
    const double t = 0.25;
    const std::size_t n = 10000;
    std::vector<double> ts(4, t);
    auto r = semitransparent_asymptotic(n, ts);
    const double r_t = std::sqrt(t);
    CHECK(r.asymptotic_probability("D1_h") ==
          doctest::Approx(0.25 * (1 - (1 + r_t) / (1 - r_t) * pi * pi / (4.0 * n))));
    CHECK(r.asymptotic_probability("D1_v") ==
          doctest::Approx(0.25 * t / ((1 - r_t) * (1 - r_t)) * pi * pi / (4.0 * n * n)));
    std::vector<double> pole{0.5, 1.0};
    CHECK_THROWS_WITH_AS(semitransparent_asymptotic(n, pole), doctest::Contains("pole"), std::invalid_argument);
}

TEST_CASE("Michelson report swaps polarisation labels") {
    auto mz = analytic_report(make_config(SchemeKind::multipixel_zeno, PixelPattern::from_bits("10"), 20));
    auto mi = analytic_report(make_config(SchemeKind::michelson_zeno, PixelPattern::from_bits("10"), 20));
    CHECK(mi.exact_probability("D0_v") == doctest::Approx(mz.exact_probability("D0_h")).epsilon(1e-14));
    CHECK(mi.exact_probability("D1_h") == doctest::Approx(mz.exact_probability("D1_v")).epsilon(1e-14));
}

TEST_CASE("asymptotes are dropped away from the default angle") {
    auto config = make_config(SchemeKind::multipixel_zeno, PixelPattern::from_bits("10"), 20);
    config.theta = 0.01;
    auto r = analytic_report(config);
    CHECK(r.asymptotic.empty());
    CHECK_FALSE(r.p_abs_asymptotic.has_value());
    CHECK(r.exact_total() == doctest::Approx(1.0).epsilon(1e-14));
}
