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

// Command-line front end: run configs, the tower demo, the self-test, and
// plot data export.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ergo/fixtures.hpp"
#include "ergo/harness.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::vector<std::string> configs;
  std::optional<std::uint64_t> seed;
  unsigned parallel = 1;
  std::string out;
  std::string format = "csv";
};

std::string render(const ergo::RunTrace& t, const std::string& format) {
  return format == "structured" ? ergo::to_structured(t) + "\n" : ergo::to_csv(t);
}

std::string trace_name(const ergo::RunTrace& t, std::size_t index) {
  for (const auto& [k, v] : t.header)
    if (k == "fixture") return v;
  return "run" + std::to_string(index);
}

bool write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

// Writes each trace to --out (one file per trace) or to stdout.
int emit(const std::vector<ergo::RunTrace>& traces, const Options& o) {
  int code = ergo::kExitPass;
  const std::string ext = o.format == "structured" ? ".json" : ".csv";
  if (!o.out.empty()) fs::create_directories(o.out);
  for (std::size_t i = 0; i < traces.size(); ++i) {
    code = std::max(code, traces[i].exit_code);
    const std::string text = render(traces[i], o.format);
    if (o.out.empty()) {
      std::cout << text;
    } else if (!write_file(fs::path(o.out) / (trace_name(traces[i], i) + ext), text)) {
      std::cerr << "ergo: cannot write to " << o.out << "\n";
      code = std::max(code, static_cast<int>(ergo::kExitConfig));
    }
  }
  return code;
}

// Loads every --config; a missing file or parse error becomes an exit-3
// trace in place of the run.
std::vector<ergo::RunTrace> run_configs(const Options& o) {
  std::vector<ergo::ExperimentConfig> configs;
  std::vector<std::optional<ergo::RunTrace>> failed(o.configs.size());
  for (std::size_t i = 0; i < o.configs.size(); ++i) {
    std::ifstream f(o.configs[i], std::ios::binary);
    std::stringstream text;
    text << f.rdbuf();
    try {
      if (!f) throw ergo::ParseError("cannot read " + o.configs[i]);
      ergo::ExperimentConfig c = ergo::parse_config(text.str());
      if (o.seed) c.set("seed", std::to_string(*o.seed));
      configs.push_back(std::move(c));
    } catch (const ergo::ParseError& e) {
      ergo::RunTrace t;
      t.add_header("version", ERGO_VERSION);
      t.add_header("fixture", fs::path(o.configs[i]).stem().string());
      t.fail(ergo::kExitConfig);
      t.add_summary("error", ergo::TraceValue::text(std::string("config: ") + e.what()));
      failed[i] = std::move(t);
    }
  }
  auto ran = ergo::run_all(configs, o.parallel);
  std::vector<ergo::RunTrace> out;
  std::size_t next = 0;
  for (auto& f : failed) out.push_back(f ? std::move(*f) : std::move(ran[next++]));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergo: exact splinter experiments on interval dynamics"};
  app.require_subcommand(1);
  Options o;

  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "Directory for output files (default: stdout)");
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "structured"}));
  };

  CLI::App* run = app.add_subcommand("run", "Run experiment configs");
  run->add_option("--config", o.configs, "Config file (repeatable)")->required();
  run->add_option("--seed", o.seed, "Override the seed of every config");
  run->add_option("--parallel", o.parallel, "Worker threads")->check(CLI::PositiveNumber);
  add_output(run);

  CLI::App* demo = app.add_subcommand("demo-kakutani", "Tower measure, preservation and splinter demo");
  add_output(demo);

  CLI::App* self = app.add_subcommand("selftest", "Run every fixture and a property battery");
  std::uint64_t self_seed = ergo::kDefaultSeed;
  self->add_option("--seed", self_seed, "Seed for random batteries");
  self->add_option("--parallel", o.parallel, "Worker threads")->check(CLI::PositiveNumber);
  add_output(self);

  CLI::App* plot = app.add_subcommand("emit-plot", "Write decimal plot data plus exact sidecars");
  plot->add_option("--config", o.configs, "Config file (repeatable)")->required();
  plot->add_option("--seed", o.seed, "Override the seed of every config");
  plot->add_option("--out", o.out, "Output directory")->required();

  CLI::App* show = app.add_subcommand("fixture", "Print a shipped fixture config");
  std::string fixture_name;
  show->add_option("name", fixture_name, "Fixture name (omit to list)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ergo::kExitConfig;
  }

  if (*run) return emit(run_configs(o), o);
  if (*demo) return emit({ergo::demo_kakutani()}, o);
  if (*self) return emit({ergo::selftest(self_seed, o.parallel)}, o);
  if (*plot) {
    const auto traces = run_configs(o);
    fs::create_directories(o.out);
    int code = ergo::kExitPass;
    for (std::size_t i = 0; i < traces.size(); ++i) {
      code = std::max(code, traces[i].exit_code);
      const auto files = ergo::emit_plot_data(traces[i]);
      const fs::path base = fs::path(o.out) / trace_name(traces[i], i);
      if (!write_file(base.string() + ".dat", files.data) ||
          !write_file(base.string() + ".exact", files.exact_sidecar)) {
        std::cerr << "ergo: cannot write to " << o.out << "\n";
        code = std::max(code, static_cast<int>(ergo::kExitConfig));
      }
    }
    return code;
  }
  if (fixture_name.empty()) {
    for (const auto& f : ergo::fixture_library()) std::cout << f.name << "\n";
    return 0;
  }
  try {
    std::cout << ergo::fixture(fixture_name).config_text;
  } catch (const ergo::Error& e) {
    std::cerr << "ergo: " << e.what() << "\n";
    return ergo::kExitConfig;
  }
  return 0;
}
