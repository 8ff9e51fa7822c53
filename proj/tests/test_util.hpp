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

#include <cstdint>
#include <random>

#include "ifm/photon_state.hpp"
#include "ifm/pixel_pattern.hpp"

namespace ifm::testing {

/// Normalised state with Gaussian random amplitudes on every basis vector.
inline PhotonState random_state(std::size_t d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    PhotonState s(d);
    double norm = 0;
    for (auto &a : s.amplitudes()) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto &a : s.amplitudes()) {
        a /= std::sqrt(norm);
    }
    return s;
}

inline PixelPattern random_bits(std::size_t d, std::mt19937_64 &rng) {
    std::string bits(d, '0');
    for (auto &b : bits) {
        b = (rng() & 1) ? '1' : '0';
    }
    return PixelPattern::from_bits(bits);
}

inline PixelPattern random_transmissions(std::size_t d, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 0.95);
    std::vector<double> t(d);
    for (auto &x : t) {
        x = u(rng);
    }
    return PixelPattern::from_transmissions(t);
}

}  // namespace ifm::testing
