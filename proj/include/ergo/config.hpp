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

// Experiment configs: one "key = value" per line, '#' starts a comment
// line. Keys keep their file order; the canonical form is exactly
// "key = value\n" per entry, without comments or blank lines.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ergo/caratheodory.hpp"
#include "ergo/dynamics.hpp"
#include "ergo/errors.hpp"
#include "ergo/splinter.hpp"

namespace ergo {

/// Config problem with the 1-based line it was found on (0 if none).
class ConfigError : public ParseError {
 public:
  ConfigError(unsigned line, const std::string& message);
  [[nodiscard]] unsigned line() const { return line_; }

 private:
  unsigned line_;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  unsigned line = 0;
};

/// Raw ordered entries of a config file.
struct ExperimentConfig {
  std::vector<ConfigEntry> entries;

  [[nodiscard]] const ConfigEntry* find(std::string_view key) const;
  /// Replaces the value of key, or appends the entry.
  void set(const std::string& key, const std::string& value);
};

ExperimentConfig parse_config(std::string_view text);
std::string serialize_config(const ExperimentConfig& config);
/// FNV-1a 64 over the canonical serialization, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

enum class Command : std::uint8_t { kSplinter, kVerify, kDensity, kGap, kMixing, kReduction, kDemo };

std::string to_string(Command c);

/// Fixed published seed used when a config does not name one.
inline constexpr std::uint64_t kDefaultSeed = 20261017;

/// Validated, typed view of a config.
struct Experiment {
  std::string name;
  SystemDescriptor system;
  Command command = Command::kSplinter;
  std::map<std::string, IntervalSet> sets;  // interval-space systems
  std::map<std::string, TowerSet> towers;   // kakutani
  /// Role (J1, J2, B, C, D, S, A1, A2) to set name.
  std::map<std::string, std::string> roles;

  Scalar epsilon = Scalar(Rational::pow2(-20));
  unsigned n_max = 256;
  std::optional<unsigned> stall_window;
  std::size_t budget = std::size_t{1} << 16;
  unsigned m = 1024;
  std::uint64_t seed = kDefaultSeed;
  std::optional<MeasureBasis> basis;
  std::size_t sample = 0;
  unsigned count = 1000;
  std::optional<unsigned> orbit_depth;
  std::optional<std::string> expect_status;
  std::optional<unsigned> expect_steps;

  [[nodiscard]] bool tower() const { return system.kind == SystemKind::kKakutani; }
  /// Set bound to a role; throws ConfigError if the role is missing.
  [[nodiscard]] const IntervalSet& set_for(const std::string& role) const;
  [[nodiscard]] const TowerSet& tower_for(const std::string& role) const;
  [[nodiscard]] bool has_role(const std::string& role) const { return roles.count(role) != 0; }
};

/// Throws ConfigError on unknown keys, bad values, undefined set names or
/// roles missing for the command.
Experiment validate(const ExperimentConfig& config);

}  // namespace ergo
