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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifm/photon_state.hpp"

namespace ifm {

inline constexpr std::string_view kAbsorbedLabel = "absorbed";

/// Assigns each basis index to at most one detector label.
class DetectorMap {
   public:
    explicit DetectorMap(std::size_t state_size);

    /// Throws std::invalid_argument if `basis_index` already belongs to a
    /// different label.
    void assign(std::size_t basis_index, std::string_view label);

    std::size_t state_size() const { return slot_.size(); }
    const std::vector<std::string> &labels() const { return labels_; }
    std::optional<std::size_t> detector_of(std::size_t basis_index) const;

   private:
    std::size_t label_id(std::string_view label);

    std::vector<std::string> labels_;
    std::vector<std::optional<std::size_t>> slot_;
};

struct DetectorProbability {
    std::string label;
    double probability;
};

struct DetectionDistribution {
    std::vector<DetectorProbability> detectors;
    double p_abs = 0;
    /// Surviving mass on basis vectors no detector sees.
    double p_undetected = 0;

    /// Throws std::out_of_range for an unknown label. Accepts kAbsorbedLabel.
    double probability(std::string_view label) const;
    bool has_label(std::string_view label) const;
    double total() const;
};

DetectionDistribution detection_distribution(const PhotonState &state, const DetectorMap &map);

}  // namespace ifm
