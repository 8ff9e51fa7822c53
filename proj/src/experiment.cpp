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

#include "ifm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "ifm/analytics.hpp"
#include "ifm/kernels.hpp"
#include "ifm/rng.hpp"

namespace ifm {

// ---- ClickCounts ----

ClickCounts::ClickCounts(std::vector<std::string> detector_labels)
    : labels_(std::move(detector_labels)), counts_(labels_.size(), 0) {}

void ClickCounts::record(std::size_t outcome, std::uint64_t times) {
    if (outcome == labels_.size()) {
        absorbed_ += times;
    } else {
        counts_.at(outcome) += times;
    }
    total_ += times;
}

void ClickCounts::add(std::string_view label, std::uint64_t times) {
    if (label == kAbsorbedLabel) {
        record(labels_.size(), times);
        return;
    }
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::out_of_range("ClickCounts: no detector '" + std::string(label) + "'");
    }
    record(static_cast<std::size_t>(it - labels_.begin()), times);
}

void ClickCounts::merge(const ClickCounts &other) {
    if (other.labels_ != labels_) {
        throw std::invalid_argument("ClickCounts::merge: detector labels differ");
    }
    for (std::size_t i = 0; i < counts_.size(); i++) {
        counts_[i] += other.counts_[i];
    }
    absorbed_ += other.absorbed_;
    total_ += other.total_;
}

std::uint64_t ClickCounts::count(std::string_view label) const {
    if (label == kAbsorbedLabel) {
        return absorbed_;
    }
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::out_of_range("ClickCounts: no detector '" + std::string(label) + "'");
    }
    return counts_[static_cast<std::size_t>(it - labels_.begin())];
}

bool ClickCounts::has_label(std::string_view label) const {
    return label == kAbsorbedLabel || std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

// ---- OutcomeSampler ----

OutcomeSampler::OutcomeSampler(const DetectionDistribution &distribution) {
    double running = 0;
    for (const auto &d : distribution.detectors) {
        labels_.push_back(d.label);
        running += d.probability;
        cumulative_.push_back(running);
        if (d.probability > 0) {
            last_possible_ = cumulative_.size() - 1;
        }
    }
    running += distribution.p_abs;
    cumulative_.push_back(running);
    if (distribution.p_abs > 0) {
        last_possible_ = cumulative_.size() - 1;
    }
    if (!(running > 0)) {
        throw std::invalid_argument("OutcomeSampler: distribution has no mass");
    }
}

std::size_t OutcomeSampler::draw(double u) const {
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) {
        return last_possible_;
    }
    return static_cast<std::size_t>(it - cumulative_.begin());
}

std::string_view OutcomeSampler::outcome_label(std::size_t outcome) const {
    return outcome == labels_.size() ? kAbsorbedLabel : std::string_view(labels_.at(outcome));
}

// ---- sampling ----

ShotSample sample_shots(const DetectionDistribution &distribution, std::uint64_t n_shots, std::uint64_t seed) {
    OutcomeSampler sampler(distribution);
    ShotSample sample{ClickCounts(sampler.detector_labels()), {}};
    sample.records.reserve(n_shots);
    for (std::uint64_t k = 0; k < n_shots; k++) {
        ShotStream stream(seed, k);
        auto outcome = sampler.draw(stream.uniform());
        sample.counts.record(outcome);
        sample.records.push_back({k, std::string(sampler.outcome_label(outcome)), seed, std::nullopt});
    }
    return sample;
}

ShotSample sample_shots(const SchemeConfig &config, std::uint64_t n_shots, std::uint64_t seed, SamplingMode mode) {
    auto run = run_scheme(config);
    if (mode == SamplingMode::final_distribution) {
        return sample_shots(run.distribution, n_shots, seed);
    }

    // Detector draw conditional on survival.
    DetectionDistribution survivors = run.distribution;
    const double surviving = 1.0 - run.distribution.p_abs - run.distribution.p_undetected;
    if (surviving > 0) {
        for (auto &d : survivors.detectors) {
            d.probability /= surviving;
        }
    }
    survivors.p_abs = 0;
    survivors.p_undetected = 0;

    std::vector<std::string> labels;
    for (const auto &d : run.distribution.detectors) {
        labels.push_back(d.label);
    }
    ShotSample sample{ClickCounts(std::move(labels)), {}};
    std::optional<OutcomeSampler> detector_sampler;
    if (surviving > 0) {
        detector_sampler.emplace(survivors);
    }
    sample.records.reserve(n_shots);
    for (std::uint64_t k = 0; k < n_shots; k++) {
        ShotStream stream(seed, k);
        std::optional<std::size_t> absorbed_at;
        for (const auto &rec : run.trace.cycles) {
            if (stream.uniform() < rec.absorption) {
                absorbed_at = rec.cycle;
                break;
            }
        }
        if (absorbed_at || !detector_sampler) {
            sample.counts.record(sample.counts.absorbed_outcome());
            sample.records.push_back({k, std::string(kAbsorbedLabel), seed, absorbed_at});
            continue;
        }
        auto outcome = detector_sampler->draw(stream.uniform());
        sample.counts.record(outcome);
        sample.records.push_back({k, std::string(detector_sampler->outcome_label(outcome)), seed, std::nullopt});
    }
    return sample;
}

ClickCounts count_shots(const DetectionDistribution &distribution, std::uint64_t n_shots, std::uint64_t seed) {
    return kernels::count_shots_parallel(OutcomeSampler(distribution), n_shots, seed);
}

ClickCounts expected_counts(const DetectionDistribution &distribution, std::uint64_t n_shots) {
    std::vector<std::string> labels;
    for (const auto &d : distribution.detectors) {
        labels.push_back(d.label);
    }
    ClickCounts counts(std::move(labels));
    const double n = static_cast<double>(n_shots);
    for (std::size_t i = 0; i < distribution.detectors.size(); i++) {
        counts.record(i, static_cast<std::uint64_t>(std::llround(distribution.detectors[i].probability * n)));
    }
    counts.record(counts.absorbed_outcome(), static_cast<std::uint64_t>(std::llround(distribution.p_abs * n)));
    return counts;
}

void write_shot_csv(std::ostream &out, std::span<const ShotRecord> records) {
    out << "shot_index,outcome_label\n";
    for (const auto &r : records) {
        out << r.index << ',' << r.outcome << '\n';
    }
}

// ---- reconstruction ----

std::string ReconstructedImage::str() const {
    std::string s;
    for (const auto &p : pixels) {
        s.push_back(p.verdict == PixelVerdict::opaque ? '1' : p.verdict == PixelVerdict::transparent ? '0' : '?');
    }
    return s;
}

bool ReconstructedImage::matches(const PixelPattern &truth) const {
    return truth.is_binary() && str() == truth.to_bits();
}

namespace {

struct PixelClicks {
    std::uint64_t reveals_opaque;
    std::uint64_t reveals_transparent;
};

std::uint64_t require(const ClickCounts &counts, const std::string &label) {
    if (!counts.has_label(label)) {
        throw std::invalid_argument("counts have no per-pixel detector '" + label +
                                    "' for this configuration");
    }
    return counts.count(label);
}

/// (h, v) clicks for pixel l of a Zeno cavity, already un-reversed for the
/// Michelson switch-out.
std::pair<std::uint64_t, std::uint64_t> zeno_clicks(const ClickCounts &counts, const SchemeConfig &config,
                                                    std::size_t l) {
    std::string h = config.kind == SchemeKind::zeno_single_pixel ? "Dh" : zeno_detector_label(l, Polarisation::H);
    std::string v = config.kind == SchemeKind::zeno_single_pixel ? "Dv" : zeno_detector_label(l, Polarisation::V);
    auto ch = require(counts, h);
    auto cv = require(counts, v);
    if (is_michelson(config.kind)) {
        std::swap(ch, cv);
    }
    return {ch, cv};
}

PixelClicks pixel_clicks(const ClickCounts &counts, const SchemeConfig &config, std::size_t l) {
    switch (config.kind) {
        case SchemeKind::ev_single_pass:
            return {require(counts, "D1"), require(counts, "D0")};
        case SchemeKind::multipixel_single_pass:
            return {require(counts, single_pass_detector_label(l, true)),
                    require(counts, single_pass_detector_label(l, false))};
        default: {
            auto [h, v] = zeno_clicks(counts, config, l);
            return {h, v};
        }
    }
}

PixelVerdict verdict_for(const PixelClicks &c, bool single_pass) {
    if (single_pass) {
        // Any click on the dark port proves the pixel blocked the arm.
        if (c.reveals_opaque > 0) {
            return PixelVerdict::opaque;
        }
        return c.reveals_transparent > 0 ? PixelVerdict::transparent : PixelVerdict::unknown;
    }
    if (c.reveals_opaque > c.reveals_transparent) {
        return PixelVerdict::opaque;
    }
    if (c.reveals_transparent > c.reveals_opaque) {
        return PixelVerdict::transparent;
    }
    return PixelVerdict::unknown;
}

}  // namespace

ReconstructedImage reconstruct_pattern(const ClickCounts &counts, const SchemeConfig &config) {
    validate(config);
    ReconstructedImage image;
    const bool single_pass = is_single_pass(config.kind);
    for (std::size_t l = 0; l < config.dimension(); l++) {
        image.pixels.push_back({verdict_for(pixel_clicks(counts, config, l), single_pass), std::nullopt});
    }
    return image;
}

ReconstructedImage estimate_transmissions(const ClickCounts &counts, const SchemeConfig &config) {
    validate(config);
    if (is_single_pass(config.kind)) {
        throw std::invalid_argument("estimate_transmissions: needs a multi-pass Zeno configuration");
    }
    const std::size_t d = config.dimension();
    const double cycle_angle = is_michelson(config.kind) ? 2 * config.theta : config.theta;
    const double n_block = static_cast<double>(counts.total()) / static_cast<double>(d);

    auto model = [&](double t) {
        const double ts[1] = {std::clamp(t, 0.0, 1.0)};
        auto r = semitransparent_exact(config.cycles, cycle_angle, ts);
        const double ph = r.exact[0].probability;
        const double pv = r.exact[1].probability;
        return std::array<double, 3>{ph, pv, std::max(0.0, 1.0 - ph - pv)};
    };

    ReconstructedImage image;
    for (std::size_t l = 0; l < d; l++) {
        auto [h, v] = zeno_clicks(counts, config, l);
        PixelEstimate est;
        est.verdict = verdict_for({h, v}, false);
        if (h + v == 0 || n_block <= 0) {
            image.pixels.push_back(est);
            continue;
        }
        const double fh = static_cast<double>(h) / n_block;
        const double fv = static_cast<double>(v) / n_block;
        const std::array<double, 3> observed{fh, fv, std::max(0.0, 1.0 - fh - fv)};
        auto loss = [&](double t) {
            auto p = model(t);
            double s = 0;
            for (int i = 0; i < 3; i++) {
                s += (observed[i] - p[i]) * (observed[i] - p[i]);
            }
            return s;
        };

        constexpr int kGrid = 200;
        int best = 0;
        double best_loss = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= kGrid; i++) {
            double val = loss(static_cast<double>(i) / kGrid);
            if (val < best_loss) {
                best_loss = val;
                best = i;
            }
        }
        const double lo = static_cast<double>(std::max(best - 1, 0)) / kGrid;
        const double hi = static_cast<double>(std::min(best + 1, kGrid)) / kGrid;
        auto [t_hat, refined_loss] = boost::math::tools::brent_find_minima(loss, lo, hi, 40);
        if (refined_loss > best_loss) {
            t_hat = static_cast<double>(best) / kGrid;
        }

        // Linearised least squares: var(T) = sum g_i^2 s_i^2 / (sum g_i^2)^2.
        const double step = 1e-6;
        auto p_lo = model(std::max(0.0, t_hat - step));
        auto p_hi = model(std::min(1.0, t_hat + step));
        auto p_at = model(t_hat);
        const double width = std::min(1.0, t_hat + step) - std::max(0.0, t_hat - step);
        double g2 = 0;
        double num = 0;
        for (int i = 0; i < 3; i++) {
            const double g = (p_hi[i] - p_lo[i]) / width;
            const double var = p_at[i] * (1 - p_at[i]) / n_block;
            g2 += g * g;
            num += g * g * var;
        }
        const double sigma = g2 > 0 ? std::sqrt(num) / g2 : std::numeric_limits<double>::infinity();
        est.transmission = TransmissionEstimate{t_hat, sigma, std::max(0.0, t_hat - 1.96 * sigma),
                                                std::min(1.0, t_hat + 1.96 * sigma)};
        image.pixels.push_back(est);
    }
    return image;
}

// ---- statistics ----

double StatisticalCheck::max_abs_z() const {
    double worst = 0;
    for (const auto &e : entries) {
        if (e.z) {
            worst = std::max(worst, std::abs(*e.z));
        }
    }
    return worst;
}

bool StatisticalCheck::has_violation() const {
    return std::any_of(entries.begin(), entries.end(), [](const auto &e) { return e.impossible_violation; });
}

StatisticalCheck statistical_check(const ClickCounts &counts, const DetectionDistribution &exact) {
    if (counts.total() < 100) {
        throw std::invalid_argument("statistical_check: need at least 100 shots, got " +
                                    std::to_string(counts.total()));
    }
    const double n = static_cast<double>(counts.total());
    StatisticalCheck check;
    auto add = [&](const std::string &label, double p, std::uint64_t observed) {
        DetectorZScore e{label, p, static_cast<double>(observed) / n, std::nullopt, false};
        if (p <= 0.0) {
            e.impossible_violation = observed > 0;
        } else if (p >= 1.0) {
            e.impossible_violation = observed != counts.total();
        } else {
            e.z = (e.frequency - p) / std::sqrt(p * (1 - p) / n);
        }
        check.entries.push_back(std::move(e));
    };
    for (const auto &d : exact.detectors) {
        add(d.label, d.probability, counts.has_label(d.label) ? counts.count(d.label) : 0);
    }
    add(std::string(kAbsorbedLabel), exact.p_abs, counts.absorbed());
    return check;
}

}  // namespace ifm
