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
#include <span>
#include <vector>

#include "ifm/experiment.hpp"
#include "ifm/schemes.hpp"

/// Data-parallel kernels. Each has a serial reference that the tests hold
/// the OpenMP version to, bit for bit.
namespace ifm::kernels {

ClickCounts count_shots_serial(const OutcomeSampler &sampler, std::uint64_t n_shots, std::uint64_t seed);
ClickCounts count_shots_parallel(const OutcomeSampler &sampler, std::uint64_t n_shots, std::uint64_t seed);

std::vector<SchemeRun> run_batch_serial(std::span<const SchemeConfig> configs);
std::vector<SchemeRun> run_batch_parallel(std::span<const SchemeConfig> configs);

int max_threads();

}  // namespace ifm::kernels
