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
#include <string>
#include <string_view>
#include <vector>

#include "ifm/detection.hpp"
#include "ifm/element.hpp"
#include "ifm/photon_state.hpp"
#include "ifm/pixel_pattern.hpp"

namespace ifm {

enum class SchemeKind {
    ev_single_pass,
    zeno_single_pixel,
    multipixel_single_pass,
    multipixel_zeno,
    michelson_zeno,
    semitransparent_zeno,
};

std::string_view to_string(SchemeKind kind);
/// Accepts the hyphenated names ("multipixel-zeno", ...). Throws
/// std::invalid_argument for anything else.
SchemeKind parse_scheme_kind(std::string_view name);

bool is_single_pass(SchemeKind kind);
bool is_michelson(SchemeKind kind);
EntryPort entry_port(SchemeKind kind);

/// How the path-to-OAM encoder is simulated: as the five elementary gates
/// S, c, object, c^-1, S^-1, or as the single OAM-diagonal attenuator.
enum class EncoderForm { composed, oam_diagonal };

struct SchemeConfig {
    SchemeKind kind = SchemeKind::multipixel_zeno;
    std::size_t cycles = 1;
    /// Rotation per rotator pass (two passes per cycle for the Michelson).
    double theta = 0;
    PixelPattern pattern = PixelPattern::transparent(1);
    EncoderForm encoder = EncoderForm::composed;

    std::size_t dimension() const { return pattern.size(); }
};

/// pi/2N for the Mach-Zehnder cavities, pi/4N per pass for the Michelson,
/// 0 for single-pass schemes.
double default_rotation_angle(SchemeKind kind, std::size_t cycles);

/// Config with the default rotation angle.
SchemeConfig make_config(SchemeKind kind, PixelPattern pattern, std::size_t cycles = 1);

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const SchemeConfig &config);

/// Detector labels used by the schemes.
std::string zeno_detector_label(std::size_t pixel, Polarisation pol);
std::string single_pass_detector_label(std::size_t pixel, bool reference_port);

struct SchemeLayout {
    /// Elements of one pass (single-pass) or one cycle (multi-pass), in order.
    std::vector<ElementOp> cycle;
    std::size_t repetitions = 1;
    std::vector<ElementOp> switch_out;
    DetectorMap detectors;
};

SchemeLayout build_scheme(const SchemeConfig &config);

struct CycleRecord {
    std::size_t cycle;
    /// Survival probability after this cycle.
    double survival;
    /// Probability of absorption during this cycle given survival so far.
    double absorption;
};

struct SchemeTrace {
    std::vector<CycleRecord> cycles;
};

struct SchemeRun {
    PhotonState final_state;
    DetectionDistribution distribution;
    SchemeTrace trace;
};

PhotonState make_initial_state(const SchemeConfig &config);

SchemeRun run_scheme(const SchemeConfig &config);

/// The ideal output of a Mach-Zehnder Zeno cavity with a binary object:
/// (1/sqrt d)[|H> sum f_l |l> + |V> sum (1 - f_l)|l>] |d_m>.
PhotonState final_state_ideal(const SchemeConfig &config);

}  // namespace ifm
