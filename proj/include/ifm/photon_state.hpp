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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ifm {

using Amplitude = std::complex<double>;

enum class Polarisation : std::uint8_t { H = 0, V = 1 };

/// Where a scheme injects the photon: the first beam splitter's input port
/// (spatial mode 0) or the reference arm (mode d) of a multi-pass cavity.
enum class EntryPort : std::uint8_t { object_arm, reference_arm };

/// Coordinates of one basis vector |pol, l, m>.
struct BasisLabel {
    Polarisation pol;
    std::size_t oam;
    std::size_t mode;

    bool operator==(const BasisLabel &) const = default;
};

/// Sub-normalised pure state of a single photon over
/// polarisation (x) OAM (x) spatial mode.
///
/// The OAM qudit has dimension d (one value per pixel). There are d + 1
/// spatial modes: 0..d-1 are the encoder's pixel paths (mode 0 doubles as the
/// object arm outside the encoder) and mode d is the reference arm. The
/// squared norm is the probability that the photon has not been absorbed.
class PhotonState {
   public:
    explicit PhotonState(std::size_t d);

    static PhotonState basis(std::size_t d, Polarisation pol, std::size_t oam, std::size_t mode);

    std::size_t dimension() const { return d_; }
    std::size_t num_modes() const { return d_ + 1; }
    std::size_t reference_mode() const { return d_; }
    std::size_t size() const { return amps_.size(); }

    std::size_t index(Polarisation pol, std::size_t oam, std::size_t mode) const;
    BasisLabel label(std::size_t index) const;

    Amplitude amp(Polarisation pol, std::size_t oam, std::size_t mode) const;
    Amplitude &amp(Polarisation pol, std::size_t oam, std::size_t mode);

    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> amplitudes() { return amps_; }

    double norm_squared() const;

    std::string str() const;

    bool operator==(const PhotonState &) const = default;

   private:
    std::size_t d_;
    std::vector<Amplitude> amps_;
};

/// Equal OAM superposition (1/sqrt d) sum_l |H, l, entry>.
PhotonState make_initial_state(std::size_t d, EntryPort entry);

/// Sum of |amp|^2; one minus this is the accumulated absorption probability.
double survival_probability(const PhotonState &state);

/// |<a|b>|^2 without renormalisation.
double overlap_probability(const PhotonState &a, const PhotonState &b);

double max_abs_difference(const PhotonState &a, const PhotonState &b);

}  // namespace ifm
