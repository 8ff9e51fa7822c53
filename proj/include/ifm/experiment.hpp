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
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifm/detection.hpp"
#include "ifm/pixel_pattern.hpp"
#include "ifm/schemes.hpp"

namespace ifm {

struct ShotRecord {
    std::uint64_t index;
    std::string outcome;
    std::uint64_t seed;
    /// Set only by per-cycle sampling when the photon was absorbed.
    std::optional<std::size_t> absorbed_in_cycle;

    bool operator==(const ShotRecord &) const = default;
};

/// Clicks per detector plus absorbed shots. Outcome indices run over the
/// detector labels followed by one slot for "absorbed".
class ClickCounts {
   public:
    ClickCounts() = default;
    explicit ClickCounts(std::vector<std::string> detector_labels);

    void record(std::size_t outcome, std::uint64_t times = 1);
    /// Label may be kAbsorbedLabel.
    void add(std::string_view label, std::uint64_t times = 1);
    /// Associative; both sides must share the same labels.
    void merge(const ClickCounts &other);

    std::uint64_t count(std::string_view label) const;
    bool has_label(std::string_view label) const;
    std::uint64_t absorbed() const { return absorbed_; }
    std::uint64_t total() const { return total_; }
    const std::vector<std::string> &labels() const { return labels_; }
    std::span<const std::uint64_t> detector_counts() const { return counts_; }
    std::size_t absorbed_outcome() const { return labels_.size(); }

    bool operator==(const ClickCounts &) const = default;

   private:
    std::vector<std::string> labels_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t absorbed_ = 0;
    std::uint64_t total_ = 0;
};

/// Inverse-CDF draw over detectors then "absorbed". Outcomes with zero
/// probability are never returned.
class OutcomeSampler {
   public:
    explicit OutcomeSampler(const DetectionDistribution &distribution);

    std::size_t draw(double u) const;
    const std::vector<std::string> &detector_labels() const { return labels_; }
    std::size_t absorbed_outcome() const { return labels_.size(); }
    std::string_view outcome_label(std::size_t outcome) const;

   private:
    std::vector<std::string> labels_;
    std::vector<double> cumulative_;
    std::size_t last_possible_ = 0;
};

enum class SamplingMode {
    /// One categorical draw from the final distribution per shot.
    final_distribution,
    /// Absorption drawn cycle by cycle from the trace, then a detector from the
    /// normalised final state.
    per_cycle,
};

struct ShotSample {
    ClickCounts counts;
    std::vector<ShotRecord> records;
};

ShotSample sample_shots(const DetectionDistribution &distribution, std::uint64_t n_shots, std::uint64_t seed);
ShotSample sample_shots(const SchemeConfig &config, std::uint64_t n_shots, std::uint64_t seed,
                        SamplingMode mode = SamplingMode::final_distribution);

/// Counts only, sampled with the OpenMP kernel. Equal to
/// sample_shots(...).counts for the same seed.
ClickCounts count_shots(const DetectionDistribution &distribution, std::uint64_t n_shots, std::uint64_t seed);

/// Rounded n * p per outcome, the large-sample limit of sample_shots.
ClickCounts expected_counts(const DetectionDistribution &distribution, std::uint64_t n_shots);

/// "shot_index,outcome_label" header then one line per shot.
void write_shot_csv(std::ostream &out, std::span<const ShotRecord> records);

enum class PixelVerdict { opaque, transparent, unknown };

struct TransmissionEstimate {
    double value;
    double sigma;
    /// Approximate 95% interval clipped to [0, 1].
    double lower;
    double upper;
};

struct PixelEstimate {
    PixelVerdict verdict = PixelVerdict::unknown;
    std::optional<TransmissionEstimate> transmission;
};

struct ReconstructedImage {
    std::vector<PixelEstimate> pixels;

    /// '1' opaque, '0' transparent, '?' unknown.
    std::string str() const;
    bool matches(const PixelPattern &truth) const;
};

/// Reads the occupancy of each pixel off the per-pixel detectors.
ReconstructedImage reconstruct_pattern(const ClickCounts &counts, const SchemeConfig &config);

/// Fits T_l per pixel by matching observed (h, v, absorbed) fractions of
/// that pixel's share of shots against a one-pixel cavity with the same N
/// and angle.
ReconstructedImage estimate_transmissions(const ClickCounts &counts, const SchemeConfig &config);

struct DetectorZScore {
    std::string label;
    double expected;
    double frequency;
    /// Empty when expected is 0 or 1; those are checked by exact count.
    std::optional<double> z;
    bool impossible_violation = false;
};

struct StatisticalCheck {
    std::vector<DetectorZScore> entries;

    double max_abs_z() const;
    bool has_violation() const;
    bool passed(double z_limit) const { return !has_violation() && max_abs_z() <= z_limit; }
};

/// Needs at least 100 shots.
StatisticalCheck statistical_check(const ClickCounts &counts, const DetectionDistribution &exact);

}  // namespace ifm
