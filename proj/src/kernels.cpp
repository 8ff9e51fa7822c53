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

#include "ifm/kernels.hpp"

#include <exception>
#include <optional>

#include <omp.h>

#include "ifm/rng.hpp"

namespace ifm::kernels {

ClickCounts count_shots_serial(const OutcomeSampler &sampler, std::uint64_t n_shots, std::uint64_t seed) {
    ClickCounts counts(sampler.detector_labels());
    for (std::uint64_t k = 0; k < n_shots; k++) {
        ShotStream stream(seed, k);
        counts.record(sampler.draw(stream.uniform()));
    }
    return counts;
}

ClickCounts count_shots_parallel(const OutcomeSampler &sampler, std::uint64_t n_shots, std::uint64_t seed) {
    ClickCounts counts(sampler.detector_labels());
    const auto n = static_cast<std::int64_t>(n_shots);
#pragma omp parallel
    {
        ClickCounts local(sampler.detector_labels());
#pragma omp for schedule(static)
        for (std::int64_t k = 0; k < n; k++) {
            ShotStream stream(seed, static_cast<std::uint64_t>(k));
            local.record(sampler.draw(stream.uniform()));
        }
#pragma omp critical(ifm_count_merge)
        counts.merge(local);
    }
    return counts;
}

std::vector<SchemeRun> run_batch_serial(std::span<const SchemeConfig> configs) {
    std::vector<SchemeRun> runs;
    runs.reserve(configs.size());
    for (const auto &c : configs) {
        runs.push_back(run_scheme(c));
    }
    return runs;
}

std::vector<SchemeRun> run_batch_parallel(std::span<const SchemeConfig> configs) {
    std::vector<std::optional<SchemeRun>> slots(configs.size());
    std::exception_ptr failure;
    const auto n = static_cast<std::int64_t>(configs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; i++) {
        try {
            slots[static_cast<std::size_t>(i)] = run_scheme(configs[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(ifm_batch_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    std::vector<SchemeRun> runs;
    runs.reserve(slots.size());
    for (auto &s : slots) {
        runs.push_back(std::move(*s));
    }
    return runs;
}

int max_threads() {
    return omp_get_max_threads();
}

}  // namespace ifm::kernels
