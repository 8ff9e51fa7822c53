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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ifm {

/// The imaged object: one amplitude-squared transmission T_l per pixel.
///
/// T_l = 0 is an opaque pixel (occupancy f_l = 1), T_l = 1 a transparent one.
/// Anything strictly between is semi-transparent and reports f_l = 0.
class PixelPattern {
   public:
    /// "1010": '1' is opaque, '0' transparent.
    static PixelPattern from_bits(std::string_view bits);
    static PixelPattern from_occupancy(std::span<const int> occupancy);
    static PixelPattern from_transmissions(std::vector<double> transmissions);
    static PixelPattern transparent(std::size_t d);

    std::size_t size() const { return transmissions_.size(); }
    double transmission(std::size_t pixel) const { return transmissions_.at(pixel); }
    int occupancy(std::size_t pixel) const { return transmissions_.at(pixel) == 0.0 ? 1 : 0; }
    bool is_binary() const;
    std::size_t opaque_count() const;
    std::span<const double> transmissions() const { return transmissions_; }

    /// Inverse of from_bits; throws for semi-transparent patterns.
    std::string to_bits() const;

    bool operator==(const PixelPattern &) const = default;

   private:
    explicit PixelPattern(std::vector<double> transmissions);
    std::vector<double> transmissions_;
};

/// Throws std::invalid_argument unless every value lies in [0, 1].
void validate_transmissions(std::span<const double> transmissions);

}  // namespace ifm
