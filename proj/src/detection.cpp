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

#include "ifm/detection.hpp"

#include <algorithm>
#include <stdexcept>

namespace ifm {

DetectorMap::DetectorMap(std::size_t state_size) : slot_(state_size) {}

std::size_t DetectorMap::label_id(std::string_view label) {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it != labels_.end()) {
        return static_cast<std::size_t>(it - labels_.begin());
    }
    labels_.emplace_back(label);
    return labels_.size() - 1;
}

void DetectorMap::assign(std::size_t basis_index, std::string_view label) {
    if (basis_index >= slot_.size()) {
        throw std::out_of_range("DetectorMap: basis index out of range");
    }
    if (label == kAbsorbedLabel) {
        throw std::invalid_argument("DetectorMap: '" + std::string(kAbsorbedLabel) + "' is reserved");
    }
    auto id = label_id(label);
    auto &slot = slot_[basis_index];
    if (slot.has_value() && *slot != id) {
        throw std::invalid_argument("DetectorMap: basis index " + std::to_string(basis_index) +
                                    " already mapped to '" + labels_[*slot] + "', cannot also map to '" +
                                    std::string(label) + "'");
    }
    slot = id;
}

std::optional<std::size_t> DetectorMap::detector_of(std::size_t basis_index) const {
    return slot_.at(basis_index);
}

double DetectionDistribution::probability(std::string_view label) const {
    if (label == kAbsorbedLabel) {
        return p_abs;
    }
    for (const auto &d : detectors) {
        if (d.label == label) {
            return d.probability;
        }
    }
    throw std::out_of_range("DetectionDistribution: no detector '" + std::string(label) + "'");
}

bool DetectionDistribution::has_label(std::string_view label) const {
    return label == kAbsorbedLabel ||
           std::any_of(detectors.begin(), detectors.end(), [&](const auto &d) { return d.label == label; });
}

double DetectionDistribution::total() const {
    double sum = p_abs + p_undetected;
    for (const auto &d : detectors) {
        sum += d.probability;
    }
    return sum;
}

DetectionDistribution detection_distribution(const PhotonState &state, const DetectorMap &map) {
    if (map.state_size() != state.size()) {
        throw std::invalid_argument("detection_distribution: detector map does not match state size");
    }
    DetectionDistribution out;
    for (const auto &label : map.labels()) {
        out.detectors.push_back({label, 0.0});
    }
    auto amps = state.amplitudes();
    double survival = 0;
    for (std::size_t j = 0; j < amps.size(); j++) {
        double p = std::norm(amps[j]);
        survival += p;
        if (auto id = map.detector_of(j)) {
            out.detectors[*id].probability += p;
        } else {
            out.p_undetected += p;
        }
    }
    out.p_abs = std::max(0.0, 1.0 - survival);
    return out;
}

}  // namespace ifm
