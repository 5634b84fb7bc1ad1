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

#include "ergo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "ergo/caratheodory.hpp"
#include "ergo/fixtures.hpp"
#include "ergo/splinter.hpp"

namespace ergo {

namespace {

TraceValue pass_value(bool ok) { return TraceValue::text(ok ? "pass" : "fail"); }
TraceValue count_value(std::size_t n) { return TraceValue::of(static_cast<long long>(n)); }

// Seeded random sets with dyadic endpoints, optionally offset by alpha/8.
class RandomSets {
 public:
  explicit RandomSets(std::uint64_t seed) : rng_(seed) {}

  IntervalSet finite(std::optional<Irrational> alpha) {
    std::uniform_int_distribution<int> pieces(0, 5);
    std::vector<Interval> out;
    for (int i = pieces(rng_); i > 0; --i) {
      Scalar a = endpoint(alpha);
      Scalar b = endpoint(alpha);
      if (b < a) std::swap(a, b);
      if (a < b) out.push_back({a, b});
    }
    return IntervalSet::from_intervals(std::move(out));
  }

  IntervalSet tail(Anchor anchor) {
    std::uniform_int_distribution<unsigned> start(0, 10);
    const unsigned s = start(rng_);
    return IntervalSet::tail(anchor, s, s % 2 == 0 ? Parity::kEven : Parity::kOdd);
  }

  bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }

 private:
  Scalar endpoint(std::optional<Irrational> alpha) {
    std::uniform_int_distribution<int> depth(0, 12);
    const int d = depth(rng_);
    std::uniform_int_distribution<std::int64_t> k(0, std::int64_t{1} << d);
    Scalar x(Rational(k(rng_), std::int64_t{1} << d));
    if (alpha && coin()) {
      const Scalar shifted = x + Scalar(Rational(-1, 16), Rational(1, 8), *alpha);
      if (shifted >= Scalar(0) && shifted <= Scalar(1)) x = shifted;
    }
    return x;
  }

  std::mt19937_64 rng_;
};

void add_config_header(RunTrace& tr, const ExperimentConfig& config, const Experiment& x) {
  tr.add_header("version", ERGO_VERSION);
  tr.add_header("config_hash", config_hash(config));
  tr.add_header("fixture", x.name);
  tr.add_header("command", to_string(x.command));
  tr.add_header("system", x.system.to_string());
  tr.add_header("notice", std::string(kRestrictionNotice));
  for (const auto& e : config.entries) tr.add_header("config." + e.key, e.value);
}

unsigned stall_window_for(const Transformation& t) { return default_stall_window(t); }
unsigned stall_window_for(const KakutaniTower&) { return 8; }

template <class Map, class Set>
void run_splinter(const Map& t, const Experiment& x, const Set& j1, const Set& j2,
                  const std::optional<Set>& b, RunTrace& tr) {
  SplinterOptions o;
  o.epsilon = x.epsilon;
  o.n_max = x.n_max;
  o.component_budget = x.budget;
  o.stall_window = x.stall_window.value_or(stall_window_for(t));
  tr.add_header("budget", "n_max=" + std::to_string(o.n_max) +
                              " component_budget=" + std::to_string(o.component_budget) +
                              " stall_window=" + std::to_string(o.stall_window));

  const auto d = splinter(t, j1, j2, o);
  tr.columns = {"step", "measure_A", "measure_B", "components_B", "covered"};
  for (const auto& s : d.trace) {
    tr.records.push_back({count_value(s.step), TraceValue::of(s.measure_a),
                          TraceValue::of(s.measure_b), count_value(s.components_b),
                          TraceValue::of(s.covered)});
  }
  tr.add_summary("status", TraceValue::text(to_string(d.status)));
  tr.add_summary("steps", count_value(d.steps()));
  tr.add_summary("epsilon", TraceValue::of(o.epsilon));
  tr.add_summary("first_measure_A", TraceValue::of(d.trace.front().measure_a));
  tr.add_summary("final_measure_B", TraceValue::of(d.trace.back().measure_b));
  if (!d.stop_reason.empty()) tr.add_summary("stop_reason", TraceValue::text(d.stop_reason));
  if (d.period != 0) tr.add_summary("period", count_value(d.period));

  const bool residual = verify_residual_identity(d).pass;
  const bool mass = verify_mass_conservation(d).pass;
  tr.add_summary("residual_identity", pass_value(residual));
  tr.add_summary("mass_conservation", pass_value(mass));
  if (!residual || !mass) tr.fail(kExitAssertion);

  if (x.orbit_depth) {
    const unsigned depth = std::min<unsigned>(*x.orbit_depth, static_cast<unsigned>(d.steps()));
    try {
      const bool ok = verify_orbit_decomposition(t, d, depth, x.budget).pass;
      tr.add_summary("orbit_decomposition_depth", count_value(depth));
      tr.add_summary("orbit_decomposition", pass_value(ok));
      if (!ok) tr.fail(kExitAssertion);
    } catch (const BudgetExhausted& e) {
      tr.add_summary("orbit_decomposition", TraceValue::text(std::string("budget: ") + e.what()));
      tr.fail(kExitBudget);
    }
  }
  if (b) {
    const auto r = transport_check(t, d, *b);
    tr.add_summary("transport_invariant_B", TraceValue::text(r.invariance.invariant ? "yes" : "no"));
    tr.add_summary("transport_chain", pass_value(r.chain_holds()));
    tr.add_summary("transport_equality", TraceValue::text(r.equality ? "yes" : "no"));
    tr.add_summary("transport_limit_lhs", TraceValue::of(r.limit.lhs));
    tr.add_summary("transport_limit_rhs", TraceValue::of(r.limit.rhs));
    if (!r.pass()) tr.fail(kExitAssertion);
  }

  if (d.status == SplinterStatus::kBudgetExhausted) tr.fail(kExitBudget);
  if (x.expect_status && *x.expect_status != to_string(d.status)) {
    tr.add_summary("expectation", TraceValue::text("status " + to_string(d.status) +
                                                   " != expected " + *x.expect_status));
    tr.fail(kExitAssertion);
  }
  if (x.expect_steps && *x.expect_steps != d.steps()) {
    tr.add_summary("expectation", TraceValue::text("steps " + std::to_string(d.steps()) +
                                                   " != expected " +
                                                   std::to_string(*x.expect_steps)));
    tr.fail(kExitAssertion);
  }
}

void command_splinter(const Experiment& x, RunTrace& tr) {
  if (x.tower()) {
    std::optional<TowerSet> b;
    if (x.has_role("B")) b = x.tower_for("B");
    run_splinter(KakutaniTower{}, x, x.tower_for("J1"), x.tower_for("J2"), b, tr);
  } else {
    std::optional<IntervalSet> b;
    if (x.has_role("B")) b = x.set_for("B");
    run_splinter(x.system.transformation(), x, x.set_for("J1"), x.set_for("J2"), b, tr);
  }
}

void command_verify(const Experiment& x, RunTrace& tr) {
  tr.add_header("seed", std::to_string(x.seed));
  tr.columns = {"index", "set", "measure", "measure_preimage", "result"};
  RandomSets gen(x.seed);
  std::size_t failures = 0;
  auto record = [&](std::size_t i, const std::string& text, const PreservationReport& r) {
    tr.records.push_back({count_value(i), TraceValue::text(text), TraceValue::of(r.measure_before),
                          TraceValue::of(r.measure_preimage), pass_value(r.pass)});
    if (!r.pass) ++failures;
  };
  std::size_t index = 0;
  if (x.tower()) {
    const KakutaniTower t;
    const IntervalSet a = IntervalSet::kakutani_floor();
    for (const auto& [name, s] : x.towers) record(index++, to_string(s), verify_measure_preserving(t, s));
    for (unsigned i = 0; i < x.count; ++i) {
      TowerSet s{gen.finite(std::nullopt), set_intersect(gen.finite(std::nullopt), a)};
      if (gen.coin()) s.top = set_union(s.top, set_intersect(gen.tail(Anchor::kOne), a));
      record(index++, to_string(s), verify_measure_preserving(t, s));
    }
  } else {
    const Transformation t = x.system.transformation();
    for (const auto& [name, s] : x.sets) record(index++, to_string(s), verify_measure_preserving(t, s));
    for (unsigned i = 0; i < x.count; ++i) {
      IntervalSet s = gen.finite(x.system.kind == SystemKind::kRotation ? x.system.universe : std::nullopt);
      if (t.kind() == SystemKind::kOdometer && gen.coin()) s = set_union(s, gen.tail(Anchor::kZero));
      record(index++, to_string(s), verify_measure_preserving(t, s));
    }
  }
  tr.add_summary("checked", count_value(index));
  tr.add_summary("failures", count_value(failures));
  if (failures != 0) tr.fail(kExitAssertion);
}

TraceValue ratio(const Scalar& part, const Scalar& whole) { return TraceValue::of(part / whole); }

void density_record(RunTrace& tr, const std::string& role, const IntervalSet& s,
                    const std::optional<Interval>& j) {
  if (!j) {
    tr.records.push_back({TraceValue::text(role), TraceValue::text("none"), TraceValue::text("none"),
                          TraceValue::text("none")});
    return;
  }
  const Scalar inside = set_measure(set_intersect(s, IntervalSet::interval(j->lo, j->hi)));
  tr.records.push_back({TraceValue::text(role), TraceValue::of(j->lo), TraceValue::of(j->hi),
                        ratio(inside, j->length())});
}

void command_density(const Experiment& x, RunTrace& tr) {
  tr.add_header("basis", x.basis->descriptor());
  tr.columns = {"role", "window_lo", "window_hi", "density"};
  tr.add_summary("epsilon", TraceValue::of(x.epsilon));
  bool found = true;
  if (x.has_role("S")) {
    const auto j = density_search(x.set_for("S"), x.epsilon, *x.basis);
    density_record(tr, "S", x.set_for("S"), j);
    tr.add_summary("window_S", TraceValue::text(j ? "found" : "not found"));
    found = found && j.has_value();
  }
  if (x.has_role("A1") && x.has_role("A2")) {
    const auto p = density_pair(x.set_for("A1"), x.set_for("A2"), x.epsilon, *x.basis);
    density_record(tr, "A1", x.set_for("A1"), p.j1);
    density_record(tr, "A2", x.set_for("A2"), p.j2);
    tr.add_summary("pair", TraceValue::text(p.found() ? "found" : "not found"));
    tr.add_summary("pair_level", count_value(p.level));
    found = found && p.found();
  }
  // A window always exists at some finite level; missing it means the
  // basis was too shallow.
  if (!found) tr.fail(kExitBudget);
}

void command_gap(const Experiment& x, RunTrace& tr) {
  tr.add_header("basis", x.basis->descriptor());
  tr.add_header("theta_notice", std::string(kThetaNotice));
  tr.columns = {"window_lo", "window_hi", "inside", "outside", "theta"};
  const IntervalSet& b = x.set_for("B");
  std::size_t mismatches = 0;
  for (const Interval& j : x.basis->level(x.basis->bound())) {
    const auto g = gap_theta(b, IntervalSet::interval(j.lo, j.hi));
    tr.records.push_back({TraceValue::of(j.lo), TraceValue::of(j.hi), TraceValue::of(g.inside),
                          TraceValue::of(g.outside), TraceValue::of(g.theta)});
    if (g.theta != Scalar(1)) ++mismatches;
  }
  tr.add_summary("windows", count_value(tr.records.size()));
  tr.add_summary("theta_not_one", count_value(mismatches));
  if (mismatches != 0) tr.fail(kExitAssertion);
}

void command_mixing(const Experiment& x, RunTrace& tr) {
  const Transformation t = x.system.transformation();
  const auto r = correlation_average(t, x.set_for("C"), x.set_for("D"), x.m);
  tr.columns = {"j", "correlation", "deviation"};
  for (std::size_t j = 0; j < r.terms.size(); ++j)
    tr.records.push_back({count_value(j + 1), TraceValue::of(r.terms[j]),
                          TraceValue::of(r.terms[j] - r.product)});
  tr.add_summary("m", count_value(x.m));
  tr.add_summary("average", TraceValue::of(r.average));
  tr.add_summary("product", TraceValue::of(r.product));
  tr.add_summary("average_minus_product", TraceValue::of(r.average - r.product));
  tr.add_summary("declared_ergodic", TraceValue::text(t.ergodic() ? "yes" : "no"));
}

void command_reduction(const Experiment& x, RunTrace& tr) {
  const Transformation t = x.system.transformation();
  tr.add_header("basis", x.basis->descriptor());
  const auto r = reduction_check(t, x.set_for("B"), *x.basis, x.sample, x.epsilon, x.n_max, x.budget);
  tr.columns = {"J_lo", "J_hi", "K_lo", "K_hi", "status", "steps",
                "in_J", "in_K", "residual", "chain", "inequality"};
  for (const auto& p : r.pairs) {
    tr.records.push_back({TraceValue::of(p.j.lo), TraceValue::of(p.j.hi), TraceValue::of(p.k.lo),
                          TraceValue::of(p.k.hi), TraceValue::text(to_string(p.status)),
                          count_value(p.steps), TraceValue::of(p.in_j), TraceValue::of(p.in_k),
                          TraceValue::of(p.residual), pass_value(p.chain_holds),
                          pass_value(p.inequality)});
  }
  tr.add_summary("invariant_B", TraceValue::text(r.invariance.invariant ? "yes" : "no"));
  tr.add_summary("defect", TraceValue::of(r.invariance.defect));
  tr.add_summary("pairs", count_value(r.pairs.size()));
  tr.add_summary("converged", count_value(r.converged));
  tr.add_summary("stalled", count_value(r.stalled));
  tr.add_summary("budget_exhausted", count_value(r.exhausted));
  tr.add_summary("mode", TraceValue::text(r.diagnostic() ? "diagnostic" : "asserted"));
  tr.add_summary("result", pass_value(r.pass));
  if (!r.pass) tr.fail(kExitAssertion);
}

void demo_body(RunTrace& tr) {
  tr.columns = {"check", "value", "result"};
  auto check = [&](std::string name, TraceValue value, bool ok) {
    tr.records.push_back({TraceValue::text(std::move(name)), std::move(value), pass_value(ok)});
    if (!ok) tr.fail(kExitAssertion);
  };
  const Scalar total = tower_measure(TowerSet::full());
  check("total_measure", TraceValue::of(total), total == Scalar(Rational(5, 3)));

  const KakutaniTower t;
  const auto battery = tower_battery();
  for (std::size_t i = 0; i < battery.size(); ++i) {
    const auto r = verify_measure_preserving(t, battery[i]);
    check("preserved " + to_string(battery[i]), TraceValue::of(r.measure_preimage), r.pass);
  }

  const Experiment x = validate(parse_config(fixture("kakutani_tower").config_text));
  SplinterOptions o;
  o.epsilon = x.epsilon;
  o.n_max = x.n_max;
  o.component_budget = x.budget;
  const auto d = splinter(t, x.tower_for("J1"), x.tower_for("J2"), o);
  check("splinter_status " + to_string(d.status), count_value(d.steps()),
        d.status == SplinterStatus::kConverged);
  check("splinter_residual_identity", TraceValue::of(set_measure(d.final_residual())),
        verify_residual_identity(d).pass);

  std::string points;
  for (const Scalar& p : discontinuity_set(SystemKind::kOdometer, 4))
    points += (points.empty() ? "" : " ") + to_exact_string(p);
  tr.add_summary("discontinuities_depth_4", TraceValue::text(points));
}

RunTrace run_validated(const ExperimentConfig& config) {
  RunTrace tr;
  const std::string hash = config_hash(config);
  try {
    const Experiment x = validate(config);
    add_config_header(tr, config, x);
    switch (x.command) {
      case Command::kSplinter:
        command_splinter(x, tr);
        break;
      case Command::kVerify:
        command_verify(x, tr);
        break;
      case Command::kDensity:
        command_density(x, tr);
        break;
      case Command::kGap:
        command_gap(x, tr);
        break;
      case Command::kMixing:
        command_mixing(x, tr);
        break;
      case Command::kReduction:
        command_reduction(x, tr);
        break;
      case Command::kDemo:
        demo_body(tr);
        break;
    }
  } catch (const ParseError& e) {
    tr.fail(kExitConfig);
    tr.add_summary("error", TraceValue::text(std::string("config: ") + e.what()));
  } catch (const PreconditionError& e) {
    tr.fail(kExitConfig);
    tr.add_summary("error", TraceValue::text(std::string("precondition: ") + e.what()));
  } catch (const BudgetExhausted& e) {
    tr.fail(kExitBudget);
    tr.add_summary("error", TraceValue::text(std::string("budget: ") + e.what()));
  } catch (const RepresentationOverflow& e) {
    tr.fail(kExitBudget);
    tr.add_summary("error", TraceValue::text(std::string("representation: ") + e.what()));
  } catch (const std::exception& e) {
    tr.fail(kExitAssertion);
    tr.add_summary("error", TraceValue::text(e.what()));
  }
  if (tr.header.empty()) {
    tr.add_header("version", ERGO_VERSION);
    tr.add_header("config_hash", hash);
  }
  tr.add_summary("exit_code", count_value(static_cast<std::size_t>(tr.exit_code)));
  return tr;
}

}  // namespace

RunTrace run(const ExperimentConfig& config) { return run_validated(config); }

RunTrace run_text(std::string_view config_text) {
  try {
    return run(parse_config(config_text));
  } catch (const ParseError& e) {
    RunTrace tr;
    tr.add_header("version", ERGO_VERSION);
    tr.fail(kExitConfig);
    tr.add_summary("error", TraceValue::text(std::string("config: ") + e.what()));
    tr.add_summary("exit_code", count_value(kExitConfig));
    return tr;
  }
}

std::vector<RunTrace> run_all(const std::vector<ExperimentConfig>& configs, unsigned parallel) {
  std::vector<RunTrace> out(configs.size());
  const unsigned workers = std::max(1U, std::min<unsigned>(parallel, configs.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) out[i] = run(configs[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return out;
}

RunTrace demo_kakutani() {
  ExperimentConfig config = parse_config("name = demo_kakutani\ncommand = demo\n");
  return run(config);
}

RunTrace selftest(std::uint64_t seed, unsigned parallel) {
  RunTrace tr;
  tr.add_header("version", ERGO_VERSION);
  tr.add_header("command", "selftest");
  tr.add_header("seed", std::to_string(seed));
  tr.columns = {"check", "exit_code", "result"};

  std::vector<ExperimentConfig> configs;
  for (const auto& f : fixture_library()) {
    ExperimentConfig c = parse_config(f.config_text);
    if (c.find("seed")) c.set("seed", std::to_string(seed));
    configs.push_back(std::move(c));
  }
  const auto traces = run_all(configs, parallel);
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const int code = traces[i].exit_code;
    tr.records.push_back({TraceValue::text(fixture_library()[i].name), count_value(code),
                          pass_value(code == kExitPass)});
    if (code != kExitPass) tr.fail(kExitAssertion);
  }

  // Set algebra laws on seeded random sets.
  RandomSets gen(seed);
  std::size_t law_failures = 0;
  for (int i = 0; i < 500; ++i) {
    IntervalSet a = gen.finite(Irrational::kGoldenConjugate);
    IntervalSet b = gen.finite(Irrational::kGoldenConjugate);
    if (gen.coin()) a = set_union(a, gen.tail(Anchor::kZero));
    if (gen.coin()) b = set_union(b, gen.tail(Anchor::kOne));
    const bool ok =
        set_measure(set_union(a, b)) + set_measure(set_intersect(a, b)) ==
            set_measure(a) + set_measure(b) &&
        set_equals(set_complement(set_complement(a)), a) &&
        set_equals(set_subtract(a, b), set_intersect(a, set_complement(b))) &&
        set_equals(set_complement(set_union(a, b)),
                   set_intersect(set_complement(a), set_complement(b)));
    if (!ok) ++law_failures;
  }
  tr.records.push_back({TraceValue::text("set_algebra_laws"), count_value(law_failures),
                        pass_value(law_failures == 0)});
  if (law_failures != 0) tr.fail(kExitAssertion);
  tr.add_summary("fixtures", count_value(traces.size()));
  tr.add_summary("exit_code", count_value(static_cast<std::size_t>(tr.exit_code)));
  return tr;
}

}  // namespace ergo
