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

#include "ifm/photon_state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ifm {

PhotonState::PhotonState(std::size_t d) : d_(d) {
    if (d == 0) {
        throw std::invalid_argument("PhotonState: OAM dimension d must be at least 1");
    }
    amps_.assign(2 * d * (d + 1), Amplitude{0.0, 0.0});
}

PhotonState PhotonState::basis(std::size_t d, Polarisation pol, std::size_t oam, std::size_t mode) {
    PhotonState s(d);
    s.amp(pol, oam, mode) = 1.0;
    return s;
}

std::size_t PhotonState::index(Polarisation pol, std::size_t oam, std::size_t mode) const {
    if (oam >= d_ || mode > d_) {
        throw std::out_of_range("PhotonState: basis label out of range");
    }
    return (static_cast<std::size_t>(pol) * d_ + oam) * (d_ + 1) + mode;
}

BasisLabel PhotonState::label(std::size_t index) const {
    if (index >= amps_.size()) {
        throw std::out_of_range("PhotonState: basis index out of range");
    }
    std::size_t mode = index % (d_ + 1);
    std::size_t rest = index / (d_ + 1);
    return {rest >= d_ ? Polarisation::V : Polarisation::H, rest % d_, mode};
}

Amplitude PhotonState::amp(Polarisation pol, std::size_t oam, std::size_t mode) const {
    return amps_[index(pol, oam, mode)];
}

Amplitude &PhotonState::amp(Polarisation pol, std::size_t oam, std::size_t mode) {
    return amps_[index(pol, oam, mode)];
}

double PhotonState::norm_squared() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

std::string PhotonState::str() const {
    std::ostringstream out;
    out << "PhotonState(d=" << d_ << ")";
    for (std::size_t k = 0; k < amps_.size(); k++) {
        if (amps_[k] == Amplitude{0.0, 0.0}) {
            continue;
        }
        auto b = label(k);
        out << "\n  |" << (b.pol == Polarisation::H ? 'H' : 'V') << ',' << b.oam << ',' << b.mode << "> "
            << amps_[k];
    }
    return out.str();
}

PhotonState make_initial_state(std::size_t d, EntryPort entry) {
    PhotonState s(d);
    std::size_t mode = entry == EntryPort::object_arm ? 0 : s.reference_mode();
    double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t l = 0; l < d; l++) {
        s.amp(Polarisation::H, l, mode) = a;
    }
    return s;
}

double survival_probability(const PhotonState &state) {
    return state.norm_squared();
}

double overlap_probability(const PhotonState &a, const PhotonState &b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("overlap_probability: dimension mismatch");
    }
    Amplitude dot = 0;
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::size_t k = 0; k < x.size(); k++) {
        dot += std::conj(x[k]) * y[k];
    }
    return std::norm(dot);
}

double max_abs_difference(const PhotonState &a, const PhotonState &b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("max_abs_difference: dimension mismatch");
    }
    double worst = 0;
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::size_t k = 0; k < x.size(); k++) {
        worst = std::max(worst, std::abs(x[k] - y[k]));
    }
    return worst;
}

}  // namespace ifm
