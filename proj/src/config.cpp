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

#include "ergo/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>

namespace ergo {

namespace {

const std::set<std::string, std::less<>> kRoles = {"J1", "J2", "B", "C", "D", "S", "A1", "A2"};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-'))
      return false;
  return true;
}

template <class T>
T parse_unsigned(const ConfigEntry& e) {
  T v{};
  const char* end = e.value.data() + e.value.size();
  const auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(e.line, e.key + " must be a non-negative integer, got '" + e.value + "'");
  return v;
}

unsigned parse_positive(const ConfigEntry& e) {
  const auto v = parse_unsigned<unsigned>(e);
  if (v == 0) throw ConfigError(e.line, e.key + " must be positive");
  return v;
}

Command parse_command(const ConfigEntry& e) {
  static const std::map<std::string, Command, std::less<>> kCommands = {
      {"splinter", Command::kSplinter}, {"verify", Command::kVerify},
      {"density", Command::kDensity},   {"gap", Command::kGap},
      {"mixing", Command::kMixing},     {"reduction", Command::kReduction},
      {"demo", Command::kDemo}};
  const auto it = kCommands.find(e.value);
  if (it == kCommands.end()) throw ConfigError(e.line, "unknown command '" + e.value + "'");
  return it->second;
}

}  // namespace

ConfigError::ConfigError(unsigned line, const std::string& message)
    : ParseError(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

const ConfigEntry* ExperimentConfig::find(std::string_view key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  for (auto& e : entries) {
    if (e.key == key) {
      e.value = value;
      return;
    }
  }
  entries.push_back({key, value, 0});
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  unsigned line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!valid_key(key)) throw ConfigError(line_no, "invalid key '" + key + "'");
    if (value.empty()) throw ConfigError(line_no, "empty value for '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(line_no, "duplicate key '" + key + "'");
    config.entries.push_back({key, value, line_no});
  }
  return config;
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& e : config.entries) out += e.key + " = " + e.value + "\n";
  return out;
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_config(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_string(Command c) {
  switch (c) {
    case Command::kSplinter:
      return "splinter";
    case Command::kVerify:
      return "verify";
    case Command::kDensity:
      return "density";
    case Command::kGap:
      return "gap";
    case Command::kMixing:
      return "mixing";
    case Command::kReduction:
      return "reduction";
    case Command::kDemo:
      return "demo";
  }
  return "unknown";
}

const IntervalSet& Experiment::set_for(const std::string& role) const {
  const auto it = roles.find(role);
  if (it == roles.end()) throw ConfigError(0, "missing set for " + role);
  return sets.at(it->second);
}

const TowerSet& Experiment::tower_for(const std::string& role) const {
  const auto it = roles.find(role);
  if (it == roles.end()) throw ConfigError(0, "missing set for " + role);
  return towers.at(it->second);
}

Experiment validate(const ExperimentConfig& config) {
  Experiment x;
  const ConfigEntry* command = config.find("command");
  if (!command) throw ConfigError(0, "missing key 'command'");
  x.command = parse_command(*command);

  const ConfigEntry* system = config.find("system");
  if (system) {
    try {
      x.system = parse_system(system->value);
    } catch (const ParseError& err) {
      throw ConfigError(system->line, err.what());
    }
  } else if (x.command == Command::kDemo) {
    x.system.kind = SystemKind::kKakutani;
  } else {
    throw ConfigError(0, "missing key 'system'");
  }

  // Sets first, so roles can be checked against them in any order.
  for (const auto& e : config.entries) {
    if (e.key.rfind("set.", 0) != 0) continue;
    const std::string name = e.key.substr(4);
    if (name.empty()) throw ConfigError(e.line, "set name is empty");
    try {
      if (x.tower()) {
        TowerSet t = parse_tower_set(e.value, x.system.universe);
        validate_tower_set(t);
        x.towers.emplace(name, std::move(t));
      } else {
        x.sets.emplace(name, parse_interval_set(e.value, x.system.universe));
      }
    } catch (const Error& err) {
      throw ConfigError(e.line, "set '" + name + "': " + err.what());
    }
  }

  for (const auto& e : config.entries) {
    const std::string& k = e.key;
    if (k == "command" || k == "system" || k.rfind("set.", 0) == 0) continue;
    if (kRoles.count(k)) {
      if (!x.sets.count(e.value) && !x.towers.count(e.value))
        throw ConfigError(e.line, k + " refers to undefined set '" + e.value + "'");
      x.roles[k] = e.value;
    } else if (k == "name") {
      x.name = e.value;
    } else if (k == "epsilon") {
      try {
        x.epsilon = parse_scalar(e.value, x.system.universe);
      } catch (const Error& err) {
        throw ConfigError(e.line, std::string("epsilon: ") + err.what());
      }
      if (x.epsilon.sign() <= 0) throw ConfigError(e.line, "epsilon must be positive");
    } else if (k == "n_max") {
      x.n_max = parse_positive(e);
    } else if (k == "stall_window") {
      x.stall_window = parse_positive(e);
    } else if (k == "budget") {
      x.budget = parse_unsigned<std::size_t>(e);
      if (x.budget == 0) throw ConfigError(e.line, "budget must be positive");
    } else if (k == "m") {
      x.m = parse_positive(e);
    } else if (k == "seed") {
      x.seed = parse_unsigned<std::uint64_t>(e);
    } else if (k == "basis") {
      try {
        x.basis = parse_basis(e.value);
      } catch (const Error& err) {
        throw ConfigError(e.line, err.what());
      }
    } else if (k == "sample") {
      x.sample = parse_unsigned<std::size_t>(e);
    } else if (k == "count") {
      x.count = parse_unsigned<unsigned>(e);
    } else if (k == "orbit_depth") {
      x.orbit_depth = parse_positive(e);
    } else if (k == "expect_status") {
      if (e.value != "converged" && e.value != "stalled" && e.value != "budget_exhausted")
        throw ConfigError(e.line, "unknown status '" + e.value + "'");
      x.expect_status = e.value;
    } else if (k == "expect_steps") {
      x.expect_steps = parse_positive(e);
    } else {
      throw ConfigError(e.line, "unknown key '" + k + "'");
    }
  }

  if (x.name.empty()) x.name = to_string(x.command);
  auto need = [&](const char* role) {
    if (!x.has_role(role))
      throw ConfigError(0, "command '" + to_string(x.command) + "' needs " + role);
  };
  auto need_basis = [&] {
    if (!x.basis) throw ConfigError(0, "command '" + to_string(x.command) + "' needs basis");
  };
  auto interval_only = [&] {
    if (x.tower())
      throw ConfigError(0, "command '" + to_string(x.command) + "' runs on interval systems");
  };
  switch (x.command) {
    case Command::kSplinter:
      need("J1");
      need("J2");
      break;
    case Command::kDensity:
      interval_only();
      need_basis();
      if (!x.has_role("S") && !(x.has_role("A1") && x.has_role("A2")))
        throw ConfigError(0, "command 'density' needs S or both A1 and A2");
      break;
    case Command::kGap:
      interval_only();
      need("B");
      need_basis();
      break;
    case Command::kMixing:
      interval_only();
      need("C");
      need("D");
      break;
    case Command::kReduction:
      interval_only();
      need("B");
      need_basis();
      break;
    case Command::kVerify:
    case Command::kDemo:
      break;
  }
  return x;
}

}  // namespace ergo
