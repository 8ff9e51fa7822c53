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

#include "ifm/schemes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ifm {

namespace {

struct KindName {
    SchemeKind kind;
    std::string_view name;
};

constexpr std::array<KindName, 6> kKindNames{{
    {SchemeKind::ev_single_pass, "ev-single-pass"},
    {SchemeKind::zeno_single_pixel, "zeno-single-pixel"},
    {SchemeKind::multipixel_single_pass, "multipixel-single-pass"},
    {SchemeKind::multipixel_zeno, "multipixel-zeno"},
    {SchemeKind::michelson_zeno, "michelson-zeno"},
    {SchemeKind::semitransparent_zeno, "semitransparent-zeno"},
}};

void append_encoder(std::vector<ElementOp> &out, const SchemeConfig &config, bool with_mirror) {
    const std::size_t d = config.dimension();
    if (config.encoder == EncoderForm::oam_diagonal) {
        out.push_back(object_attenuator(config.pattern, ObjectPlacement::oam_diagonal));
        return;
    }
    out.push_back(oam_sorter(d, Direction::forward));
    out.push_back(oam_converter(d, Direction::forward));
    out.push_back(object_attenuator(config.pattern, ObjectPlacement::pixel_paths));
    if (with_mirror) {
        out.push_back(mirror_reflect(MirrorKind::plain, d, Arms::pixel_paths));
    }
    out.push_back(oam_converter(d, Direction::inverse));
    out.push_back(oam_sorter(d, Direction::inverse));
}

DetectorMap zeno_detectors(std::size_t d, bool single_pixel_names) {
    PhotonState probe(d);
    DetectorMap map(probe.size());
    for (std::size_t l = 0; l < d; l++) {
        for (auto pol : {Polarisation::H, Polarisation::V}) {
            std::string label = single_pixel_names ? (pol == Polarisation::H ? "Dh" : "Dv")
                                                   : zeno_detector_label(l, pol);
            map.assign(probe.index(pol, l, d), label);
        }
    }
    return map;
}

}  // namespace

std::string_view to_string(SchemeKind kind) {
    for (const auto &kn : kKindNames) {
        if (kn.kind == kind) {
            return kn.name;
        }
    }
    throw std::invalid_argument("unknown scheme kind");
}

SchemeKind parse_scheme_kind(std::string_view name) {
    for (const auto &kn : kKindNames) {
        if (kn.name == name) {
            return kn.kind;
        }
    }
    throw std::invalid_argument("unknown scheme kind '" + std::string(name) + "'");
}

bool is_single_pass(SchemeKind kind) {
    return kind == SchemeKind::ev_single_pass || kind == SchemeKind::multipixel_single_pass;
}

bool is_michelson(SchemeKind kind) {
    return kind == SchemeKind::michelson_zeno;
}

EntryPort entry_port(SchemeKind kind) {
    return is_single_pass(kind) ? EntryPort::object_arm : EntryPort::reference_arm;
}

double default_rotation_angle(SchemeKind kind, std::size_t cycles) {
    if (is_single_pass(kind)) {
        return 0.0;
    }
    if (cycles == 0) {
        throw std::invalid_argument("multi-pass schemes need at least one cycle");
    }
    const double n = static_cast<double>(cycles);
    return is_michelson(kind) ? std::numbers::pi / (4 * n) : std::numbers::pi / (2 * n);
}

SchemeConfig make_config(SchemeKind kind, PixelPattern pattern, std::size_t cycles) {
    SchemeConfig c;
    c.kind = kind;
    c.cycles = is_single_pass(kind) ? 1 : cycles;
    c.theta = default_rotation_angle(kind, c.cycles);
    c.pattern = std::move(pattern);
    return c;
}

void validate(const SchemeConfig &config) {
    const std::size_t d = config.dimension();
    if ((config.kind == SchemeKind::ev_single_pass || config.kind == SchemeKind::zeno_single_pixel) && d != 1) {
        throw std::invalid_argument(std::string(to_string(config.kind)) + " images a single pixel, got d = " +
                                    std::to_string(d));
    }
    if (!is_single_pass(config.kind) && config.cycles == 0) {
        throw std::invalid_argument("multi-pass schemes need at least one cycle (N >= 1)");
    }
    if (!std::isfinite(config.theta)) {
        throw std::invalid_argument("rotation angle must be finite");
    }
}

std::string zeno_detector_label(std::size_t pixel, Polarisation pol) {
    return "D" + std::to_string(pixel) + (pol == Polarisation::H ? "_h" : "_v");
}

std::string single_pass_detector_label(std::size_t pixel, bool reference_port) {
    return std::string(reference_port ? "Dd_" : "D0_") + std::to_string(pixel);
}

SchemeLayout build_scheme(const SchemeConfig &config) {
    validate(config);
    const std::size_t d = config.dimension();
    PhotonState probe(d);
    SchemeLayout layout{{}, 1, {}, DetectorMap(probe.size())};

    switch (config.kind) {
        case SchemeKind::ev_single_pass: {
            layout.cycle = {beam_splitter(d), object_attenuator(config.pattern, ObjectPlacement::pixel_paths),
                            beam_splitter(d)};
            for (auto pol : {Polarisation::H, Polarisation::V}) {
                layout.detectors.assign(probe.index(pol, 0, 0), "D0");
                layout.detectors.assign(probe.index(pol, 0, 1), "D1");
            }
            break;
        }
        case SchemeKind::multipixel_single_pass: {
            layout.cycle.push_back(beam_splitter(d));
            append_encoder(layout.cycle, config, false);
            layout.cycle.push_back(beam_splitter(d));
            // The output sorter on port d is the per-OAM split of the detectors.
            for (std::size_t l = 0; l < d; l++) {
                for (auto pol : {Polarisation::H, Polarisation::V}) {
                    layout.detectors.assign(probe.index(pol, l, 0), single_pass_detector_label(l, false));
                    layout.detectors.assign(probe.index(pol, l, d), single_pass_detector_label(l, true));
                }
            }
            break;
        }
        case SchemeKind::zeno_single_pixel: {
            layout.cycle = {polarisation_rotator(d, config.theta), polarising_beam_splitter(d),
                            object_attenuator(config.pattern, ObjectPlacement::pixel_paths),
                            polarising_beam_splitter(d)};
            layout.repetitions = config.cycles;
            layout.detectors = zeno_detectors(d, true);
            break;
        }
        case SchemeKind::multipixel_zeno:
        case SchemeKind::semitransparent_zeno: {
            layout.cycle = {polarisation_rotator(d, config.theta), polarising_beam_splitter(d)};
            append_encoder(layout.cycle, config, false);
            layout.cycle.push_back(polarising_beam_splitter(d));
            layout.repetitions = config.cycles;
            layout.detectors = zeno_detectors(d, false);
            break;
        }
        case SchemeKind::michelson_zeno: {
            layout.cycle = {polarisation_rotator(d, config.theta), mirror_reflect(MirrorKind::retro, d),
                            polarisation_rotator(d, config.theta), polarising_beam_splitter(d)};
            append_encoder(layout.cycle, config, true);
            layout.cycle.push_back(mirror_reflect(MirrorKind::retro, d, Arms::reference));
            layout.cycle.push_back(polarising_beam_splitter(d));
            layout.repetitions = config.cycles;
            layout.switch_out.push_back(pockels_flip(d));
            layout.detectors = zeno_detectors(d, false);
            break;
        }
    }
    return layout;
}

PhotonState make_initial_state(const SchemeConfig &config) {
    return make_initial_state(config.dimension(), entry_port(config.kind));
}

SchemeRun run_scheme(const SchemeConfig &config) {
    SchemeLayout layout = build_scheme(config);
    PhotonState state = make_initial_state(config);
    SchemeTrace trace;
    trace.cycles.reserve(layout.repetitions);

    // Absorbed mass is summed at the attenuators rather than read off as
    // 1 - survival, so a fully transparent object gives exactly zero.
    double absorbed = 0;
    double before = state.norm_squared();
    for (std::size_t n = 0; n < layout.repetitions; n++) {
        for (const auto &op : layout.cycle) {
            if (op.kind() == ElementKind::attenuator) {
                const double incoming = state.norm_squared();
                op.apply_in_place(state);
                absorbed += incoming - state.norm_squared();
            } else {
                op.apply_in_place(state);
            }
        }
        double after = state.norm_squared();
        double absorption = before > 0 ? 1.0 - after / before : 0.0;
        trace.cycles.push_back({n, after, absorption});
        before = after;
    }
    for (const auto &op : layout.switch_out) {
        op.apply_in_place(state);
    }
    auto distribution = detection_distribution(state, layout.detectors);
    distribution.p_abs = std::max(0.0, absorbed);
    return {std::move(state), std::move(distribution), std::move(trace)};
}

PhotonState final_state_ideal(const SchemeConfig &config) {
    if (config.kind != SchemeKind::multipixel_zeno && config.kind != SchemeKind::zeno_single_pixel &&
        config.kind != SchemeKind::semitransparent_zeno) {
        throw std::invalid_argument("final_state_ideal: only Mach-Zehnder Zeno schemes have this target state");
    }
    if (!config.pattern.is_binary()) {
        throw std::invalid_argument("final_state_ideal: semi-transparent pattern has no closed-form target state");
    }
    const std::size_t d = config.dimension();
    PhotonState s(d);
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t l = 0; l < d; l++) {
        auto pol = config.pattern.occupancy(l) == 1 ? Polarisation::H : Polarisation::V;
        s.amp(pol, l, d) = a;
    }
    return s;
}

}  // namespace ifm
