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

#include <string>
#include <string_view>
#include <vector>

#include "ergo/config.hpp"
#include "ergo/dynamics.hpp"

namespace ergo {

/// A shipped experiment, stored as canonical config text. The files under
/// fixtures/ hold the same bytes.
struct Fixture {
  std::string name;
  std::string config_text;
};

const std::vector<Fixture>& fixture_library();
/// Throws PreconditionError for an unknown name.
const Fixture& fixture(std::string_view name);

/// Tower sets checked for exact preservation of the tower measure.
std::vector<TowerSet> tower_battery();

}  // namespace ergo
