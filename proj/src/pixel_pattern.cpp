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

#include "ifm/pixel_pattern.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ifm {

void validate_transmissions(std::span<const double> transmissions) {
    for (std::size_t l = 0; l < transmissions.size(); l++) {
        double t = transmissions[l];
        if (!(t >= 0.0 && t <= 1.0)) {
            throw std::invalid_argument("transmission T_" + std::to_string(l) + " = " + std::to_string(t) +
                                        " is outside [0, 1]");
        }
    }
}

PixelPattern::PixelPattern(std::vector<double> transmissions) : transmissions_(std::move(transmissions)) {
    if (transmissions_.empty()) {
        throw std::invalid_argument("PixelPattern: need at least one pixel");
    }
    validate_transmissions(transmissions_);
}

PixelPattern PixelPattern::from_bits(std::string_view bits) {
    std::vector<double> t;
    t.reserve(bits.size());
    for (char c : bits) {
        if (c == '0') {
            t.push_back(1.0);
        } else if (c == '1') {
            t.push_back(0.0);
        } else {
            throw std::invalid_argument("PixelPattern: pattern must contain only '0' and '1', got '" +
                                        std::string(bits) + "'");
        }
    }
    return PixelPattern(std::move(t));
}

PixelPattern PixelPattern::from_occupancy(std::span<const int> occupancy) {
    std::vector<double> t;
    t.reserve(occupancy.size());
    for (int f : occupancy) {
        if (f != 0 && f != 1) {
            throw std::invalid_argument("PixelPattern: occupancy must be 0 or 1");
        }
        t.push_back(f == 1 ? 0.0 : 1.0);
    }
    return PixelPattern(std::move(t));
}

PixelPattern PixelPattern::from_transmissions(std::vector<double> transmissions) {
    return PixelPattern(std::move(transmissions));
}

PixelPattern PixelPattern::transparent(std::size_t d) {
    return PixelPattern(std::vector<double>(d, 1.0));
}

bool PixelPattern::is_binary() const {
    return std::all_of(transmissions_.begin(), transmissions_.end(), [](double t) { return t == 0.0 || t == 1.0; });
}

std::size_t PixelPattern::opaque_count() const {
    return static_cast<std::size_t>(std::count(transmissions_.begin(), transmissions_.end(), 0.0));
}

std::string PixelPattern::to_bits() const {
    if (!is_binary()) {
        throw std::invalid_argument("PixelPattern: semi-transparent pattern has no bit string");
    }
    std::string out;
    for (double t : transmissions_) {
        out.push_back(t == 0.0 ? '1' : '0');
    }
    return out;
}

}  // namespace ifm
