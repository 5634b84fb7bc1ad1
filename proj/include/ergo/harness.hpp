// Copyright 2026 The ergo Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ergo/config.hpp"
#include "ergo/trace.hpp"

namespace ergo {

/// Runs one experiment. Never throws: config problems give exit code 3,
/// budget and representation limits 2, failed assertions 1.
RunTrace run(const ExperimentConfig& config);
/// Parses then runs; parse errors give exit code 3.
RunTrace run_text(std::string_view config_text);

/// Runs independent configs on up to `parallel` threads. Traces come back
/// in input order.
std::vector<RunTrace> run_all(const std::vector<ExperimentConfig>& configs, unsigned parallel);

/// Total tower measure, preservation on the tower battery, a tower splinter
/// run and the listing of psi's discontinuities.
RunTrace demo_kakutani();

/// Every shipped fixture plus a seeded set-algebra property battery.
RunTrace selftest(std::uint64_t seed, unsigned parallel);

}  // namespace ergo
