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
#include <functional>
#include <string>
#include <vector>

#include "ifm/element.hpp"

namespace ifm {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyOptions {
    /// Rotator under test in the unitarity suite; swap in a faulty one to
    /// check that the suite notices.
    std::function<ElementOp(std::size_t, double)> rotator = polarisation_rotator;
    std::uint64_t seed = 20260101;
};

/// Runs every invariant suite and closed-form reproduction. One result per
/// named check, in a fixed order.
std::vector<CheckResult> run_verification(const VerifyOptions &options = {});

/// Operator norm of (c S - SWAP) restricted to inputs on path 0, where SWAP
/// exchanges the OAM and pixel-path qudits.
double swap_identity_error(std::size_t d);

}  // namespace ifm
