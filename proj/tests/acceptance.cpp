// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ergo/caratheodory.hpp"
#include "ergo/config.hpp"
#include "ergo/fixtures.hpp"
#include "ergo/splinter.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace ergo;

namespace {

// Pinned tolerances and sizes.
constexpr unsigned kRandomSets = 1000;
constexpr double kPreservationSeconds = 30.0;
constexpr unsigned kResidualSteps = 64;
constexpr unsigned kDoublingSteps = 20;
constexpr std::int64_t kDoublingOracleCells = std::int64_t{1} << 24;
constexpr unsigned kStallSteps = 100;
constexpr unsigned kOrbitDoubling = 10;
constexpr unsigned kOrbitLong = 64;
constexpr unsigned kMixingTerms = 20;
constexpr unsigned kCesaroLength = 1024;
const Rational kCesaroTolerance(1, 100);
const Rational kGoldenResidualBound(1, 1000);
constexpr unsigned kDiscontinuityDepth = 12;
constexpr unsigned kTruncations = 32;
constexpr std::uint64_t kSeed = kDefaultSeed;

Scalar S(std::int64_t n, std::int64_t d) { return Scalar(Rational(n, d)); }
IntervalSet I(std::int64_t a, std::int64_t da, std::int64_t b, std::int64_t db) {
  return IntervalSet::interval(S(a, da), S(b, db));
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later failures only flip the flag.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && out_.pass) out_.detail = "first failure: " + what;
    out_.pass = out_.pass && ok;
  }
  void note(const std::string& s) {
    if (out_.pass) out_.detail = s;
  }
  Outcome done() const { return out_; }

 private:
  Outcome out_;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Experiment load(std::string_view name) { return validate(parse_config(fixture(name).config_text)); }

SplinterOptions options_of(const Experiment& x) {
  SplinterOptions o;
  o.epsilon = x.epsilon;
  o.n_max = x.n_max;
  o.component_budget = x.budget;
  if (x.stall_window) o.stall_window = *x.stall_window;
  return o;
}

// Splinter fixtures run in full: interval systems and the tower.
struct FixtureRuns {
  std::vector<std::pair<std::string, SplinterDecomposition<IntervalSet>>> interval;
  std::vector<std::pair<std::string, SplinterDecomposition<TowerSet>>> tower;
};

const FixtureRuns& fixture_runs() {
  static const FixtureRuns runs = [] {
    FixtureRuns r;
    for (const auto& f : fixture_library()) {
      const Experiment x = validate(parse_config(f.config_text));
      if (x.command != Command::kSplinter) continue;
      auto o = options_of(x);
      if (x.tower()) {
        r.tower.emplace_back(f.name, splinter(KakutaniTower{}, x.tower_for("J1"), x.tower_for("J2"), o));
      } else {
        const Transformation t = x.system.transformation();
        if (!x.stall_window) o.stall_window = default_stall_window(t);
        r.interval.emplace_back(f.name, splinter(t, x.set_for("J1"), x.set_for("J2"), o));
      }
    }
    return r;
  }();
  return runs;
}

// --- 1 -----------------------------------------------------------------
Outcome measure_preservation() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  gen::SetGenerator g(kSeed);
  gen::SetShape golden;
  golden.alpha = Irrational::kGoldenConjugate;
  gen::SetShape dyadic;
  gen::SetShape odometer;
  odometer.zero_tails = true;
  gen::SetShape tower;
  tower.one_tails = true;

  const Transformation rot = Transformation::rotation(Scalar::alpha(Irrational::kGoldenConjugate));
  const Transformation dbl = Transformation::doubling();
  const Transformation odo = Transformation::odometer();
  for (unsigned i = 0; i < kRandomSets; ++i) {
    const IntervalSet a = g.finite(golden);
    c.expect(verify_measure_preserving(rot, a).pass, "golden rotation on " + to_string(a));
    const IntervalSet b = g.finite(dyadic);
    c.expect(verify_measure_preserving(dbl, b).pass, "doubling on " + to_string(b));
    const IntervalSet o = g.any(odometer);
    c.expect(verify_measure_preserving(odo, o).pass, "odometer on " + to_string(o));
    const TowerSet t = g.tower(tower);
    c.expect(verify_measure_preserving(KakutaniTower{}, t).pass, "tower on " + to_string(t));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(seconds < kPreservationSeconds, "runtime " + std::to_string(seconds) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "4 systems x %u sets, %.2f s", kRandomSets, seconds);
  c.note(buf);
  return c.done();
}

// --- 2, 3 --------------------------------------------------------------
// Recomputed here from the recorded pieces rather than through the
// library's verifiers.
template <class Set>
void residual_identity_of(Check& c, const std::string& name, const SplinterDecomposition<Set>& d) {
  Set covered;
  const std::size_t n = std::min<std::size_t>(d.steps(), kResidualSteps);
  for (std::size_t i = 0; i < n; ++i) {
    covered = set_union(covered, d.splinters[i]);
    c.expect(set_measure(d.residuals[i]) == set_measure(set_subtract(d.j2, covered)),
             name + " step " + std::to_string(i + 1));
  }
}

template <class Set>
void mass_conservation_of(Check& c, const std::string& name, const SplinterDecomposition<Set>& d) {
  Scalar sum(0);
  for (std::size_t i = 0; i < d.steps(); ++i) {
    sum = sum + set_measure(d.splinters[i]);
    c.expect(sum + set_measure(d.residuals[i]) == set_measure(d.j1),
             name + " step " + std::to_string(i + 1));
  }
}

Outcome residual_identity() {
  Check c;
  std::size_t runs = 0;
  for (const auto& [name, d] : fixture_runs().interval) residual_identity_of(c, name, d), ++runs;
  for (const auto& [name, d] : fixture_runs().tower) residual_identity_of(c, name, d), ++runs;
  c.note(std::to_string(runs) + " splinter fixtures, steps <= " + std::to_string(kResidualSteps));
  return c.done();
}

Outcome mass_conservation() {
  Check c;
  std::size_t steps = 0;
  for (const auto& [name, d] : fixture_runs().interval) mass_conservation_of(c, name, d), steps += d.steps();
  for (const auto& [name, d] : fixture_runs().tower) mass_conservation_of(c, name, d), steps += d.steps();
  c.note(std::to_string(steps) + " steps across all splinter fixtures");
  return c.done();
}

// --- 4 -----------------------------------------------------------------
Outcome doubling_closed_form() {
  Check c;
  SplinterOptions o;
  o.epsilon = Scalar(Rational::pow2(-static_cast<int>(kDoublingSteps) - 2));
  o.n_max = kDoublingSteps;
  const IntervalSet half = I(0, 1, 1, 2);
  const auto d = splinter(Transformation::doubling(), half, half, o);
  c.expect(d.steps() == kDoublingSteps, "recorded " + std::to_string(d.steps()) + " steps");
  const auto cells = oracle::doubling_splinter_cells(kDoublingOracleCells, 0, kDoublingOracleCells / 2,
                                                     0, kDoublingOracleCells / 2, kDoublingSteps);
  for (unsigned n = 1; n <= std::min<std::size_t>(d.steps(), kDoublingSteps); ++n) {
    const Scalar closed = Scalar(Rational::pow2(-static_cast<int>(n) - 1));
    const Scalar measured = set_measure(d.residuals[n - 1]);
    c.expect(measured == closed, "closed form at step " + std::to_string(n));
    c.expect(n <= cells.size() && measured == Scalar(Rational(cells[n - 1], kDoublingOracleCells)),
             "cell oracle at step " + std::to_string(n));
  }
  c.note("mu(B_n) = 2^-(n+1) for n <= " + std::to_string(kDoublingSteps) +
         ", matched against 2^24 cells");
  return c.done();
}

// --- 5 -----------------------------------------------------------------
Outcome odometer_cover() {
  Check c;
  SplinterOptions o;
  o.n_max = 1;
  const auto d = splinter(Transformation::odometer(), I(0, 1, 1, 2), I(1, 2, 1, 1), o);
  c.expect(d.steps() == 1, "one step");
  c.expect(d.steps() == 1 && set_is_empty(d.residuals[0]), "B_1 empty");
  c.expect(d.steps() == 1 && d.splinters[0] == I(1, 2, 1, 1), "A_1 = J2");
  c.note("B_1 = empty, A_1 = [1/2,1)");
  return c.done();
}

// --- 6 -----------------------------------------------------------------
Outcome golden_first_splinter() {
  Check c;
  const std::string text = read_file(std::string(ERGO_FIXTURE_DIR) + "/golden_rotation.cfg");
  const Experiment x = validate(parse_config(text));
  const unsigned pinned = x.n_max;
  SplinterOptions o = options_of(x);
  o.epsilon = Scalar(kGoldenResidualBound);
  const Transformation t = x.system.transformation();
  o.stall_window = default_stall_window(t);
  c.expect(x.set_for("J1") == I(0, 1, 1, 4) && x.set_for("J2") == I(1, 2, 3, 4), "fixture windows");
  const auto d = splinter(t, x.set_for("J1"), x.set_for("J2"), o);
  const Scalar alpha = Scalar::alpha(Irrational::kGoldenConjugate);
  c.expect(!d.splinters.empty() && set_measure(d.splinters[0]) == S(3, 4) - alpha, "mu(A_1)");
  c.expect(d.status == SplinterStatus::kConverged, "status " + to_string(d.status));
  c.expect(d.steps() <= pinned, "steps " + std::to_string(d.steps()));
  c.expect(set_measure(d.final_residual()) < Scalar(kGoldenResidualBound), "final residual");
  c.note("mu(A_1) = 3/4 - alpha; mu(B_" + std::to_string(d.steps()) + ") = " +
         report_decimal(set_measure(d.final_residual())) + " < 1/1000 within N* = " +
         std::to_string(pinned));
  return c.done();
}

// --- 7 -----------------------------------------------------------------
Outcome non_ergodic_stall() {
  Check c;
  const Experiment x = load("rotation_third");
  SplinterOptions o = options_of(x);
  o.n_max = kStallSteps;
  o.stall_window = kStallSteps;
  const auto d = splinter(x.system.transformation(), x.set_for("J1"), x.set_for("J2"), o);
  c.expect(d.status == SplinterStatus::kStalled, "status " + to_string(d.status));
  c.expect(d.steps() == kStallSteps, "steps " + std::to_string(d.steps()));
  for (std::size_t i = 0; i < d.steps(); ++i) {
    c.expect(set_measure(d.residuals[i]) == S(1, 6), "mu(B) at step " + std::to_string(i + 1));
    c.expect(set_is_empty(d.splinters[i]), "A nonempty at step " + std::to_string(i + 1));
  }
  c.note("stalled with period " + std::to_string(d.period) + ", mu(B_n) = 1/6 and A_n empty for n <= " +
         std::to_string(kStallSteps));
  return c.done();
}

// --- 8 -----------------------------------------------------------------
Outcome orbit_decomposition() {
  Check c;
  const std::pair<const char*, unsigned> cases[] = {{"doubling_half", kOrbitDoubling},
                                                    {"golden_rotation", kOrbitLong},
                                                    {"rotation_third", kOrbitLong},
                                                    {"odometer_block", kOrbitLong}};
  std::string summary;
  for (const auto& [name, depth] : cases) {
    for (const auto& [fname, d] : fixture_runs().interval) {
      if (fname != name) continue;
      const Transformation t = load(name).system.transformation();
      c.expect(d.steps() >= depth, std::string(name) + " too short");
      if (d.steps() < depth) continue;
      const auto r = verify_orbit_decomposition(t, d, depth);
      c.expect(r.pass, std::string(name) + " orbit decomposition");
      summary += (summary.empty() ? "" : ", ") + t.descriptor() + " n <= " + std::to_string(depth);
    }
  }
  c.note(summary);
  return c.done();
}

// --- 9 -----------------------------------------------------------------
Outcome caratheodory_equality() {
  Check c;
  gen::SetGenerator g(kSeed + 9);
  gen::SetShape shape;
  shape.alpha = Irrational::kGoldenConjugate;
  shape.zero_tails = true;
  shape.one_tails = true;
  for (const auto& basis : {MeasureBasis::dyadic(10), MeasureBasis::arcs(32)}) {
    const auto elems = basis.elements();
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    for (unsigned i = 0; i < kRandomSets; ++i) {
      const IntervalSet b = g.any(shape);
      const Interval& j = elems[pick(g.rng())];
      const auto r = gap_theta(b, IntervalSet::interval(j.lo, j.hi));
      c.expect(r.theta == Scalar(1), basis.descriptor() + " B = " + to_string(b));
    }
  }
  c.note("theta = 1 on " + std::to_string(kRandomSets) + " pairs for dyadic:10 and arcs:32");
  return c.done();
}

// --- 10 ----------------------------------------------------------------
template <class Map, class Set>
void transport_of(Check& c, const std::string& name, const Map& t, const SplinterDecomposition<Set>& d,
                  const Set& empty, const Set& full) {
  for (const Set& b : {empty, full}) {
    const auto r = transport_check(t, d, b);
    c.expect(r.invariance.invariant && r.chain_holds() && r.equality,
             name + (set_is_empty(b) ? " with empty B" : " with full B"));
  }
}

Outcome transport_inequality() {
  Check c;
  std::size_t invariant_runs = 0;
  for (const auto& [name, d] : fixture_runs().interval) {
    const Experiment x = load(name);
    const Transformation t = x.system.transformation();
    transport_of(c, name, t, d, IntervalSet(), IntervalSet::full());
    if (!x.has_role("B")) continue;
    const auto r = transport_check(t, d, x.set_for("B"));
    c.expect(r.invariance.invariant, name + " B invariant");
    c.expect(r.chain_holds(), name + " chain");
    ++invariant_runs;
  }
  for (const auto& [name, d] : fixture_runs().tower) {
    const Experiment x = load(name);
    transport_of(c, name, KakutaniTower{}, d, TowerSet{}, TowerSet::full());
    if (!x.has_role("B")) continue;
    const auto r = transport_check(KakutaniTower{}, d, x.tower_for("B"));
    c.expect(r.invariance.invariant, name + " B invariant");
    c.expect(r.chain_holds(), name + " chain");
    ++invariant_runs;
  }
  c.expect(invariant_runs >= 2, "invariant-B fixtures present");
  c.note(std::to_string(invariant_runs) + " invariant-B fixtures; equality for empty and full B on all");
  return c.done();
}

// --- 11 ----------------------------------------------------------------
Outcome mixing_diagnostics() {
  Check c;
  const IntervalSet half = I(0, 1, 1, 2);
  const auto trace = mixing_trace(Transformation::doubling(), half, half, kMixingTerms);
  c.expect(trace.size() == kMixingTerms, "doubling trace length");
  for (std::size_t j = 0; j < trace.size(); ++j)
    c.expect(trace[j] == Scalar(0), "doubling term " + std::to_string(j + 1));
  const auto r = correlation_average(Transformation::odometer(), half, half, kCesaroLength);
  const Scalar gap = r.average - r.product;
  c.expect(gap <= Scalar(kCesaroTolerance) && gap >= Scalar(-kCesaroTolerance), "odometer average");
  c.note("doubling trace = 0 for j <= " + std::to_string(kMixingTerms) + "; odometer average " +
         to_exact_string(r.average) + " vs product " + to_exact_string(r.product));
  return c.done();
}

// --- 12 ----------------------------------------------------------------
Outcome kakutani_suite() {
  Check c;
  c.expect(tower_measure(TowerSet::full()) == S(5, 3), "total measure");
  const auto battery = tower_battery();
  for (const auto& s : battery) {
    const TowerSet pre = tower_preimage(s);
    c.expect(tower_measure(pre) == tower_measure(s), "preimage of " + to_string(s));
  }
  const auto points = discontinuity_set(SystemKind::kOdometer, kDiscontinuityDepth);
  c.expect(points.size() == kDiscontinuityDepth + 1, "listing size");
  for (unsigned n = 0; n < points.size(); ++n)
    c.expect(points[n] == Scalar(Rational(1) - Rational::pow2(-static_cast<int>(n))),
             "point " + std::to_string(n));
  c.note("total 5/3, " + std::to_string(battery.size()) + " battery sets preserved, " +
         std::to_string(points.size()) + " breakpoints to depth " + std::to_string(kDiscontinuityDepth));
  return c.done();
}

// --- 13 ----------------------------------------------------------------
Outcome truncations() {
  Check c;
  std::size_t families = 0;
  for (const auto& [name, d] : fixture_runs().interval) {
    for (const IntervalSet& b : {IntervalSet::full(), d.j2}) {
      const auto r = additivity_check(d.splinters, b, kTruncations);
      c.expect(r.pass, name + " splinter family");
      ++families;
    }
  }
  for (const auto& [name, d] : fixture_runs().tower) {
    c.expect(additivity_check(d.splinters, TowerSet::full(), kTruncations).pass, name + " splinter family");
    ++families;
  }
  std::vector<IntervalSet> blocks;
  for (unsigned n = 0; n <= kTruncations; ++n)
    blocks.push_back(IntervalSet::interval(Scalar(Rational(1) - Rational::pow2(-static_cast<int>(n))),
                                           Scalar(Rational(1) - Rational::pow2(-static_cast<int>(n) - 1))));
  for (const IntervalSet& b :
       {IntervalSet::full(), IntervalSet::kakutani_floor(), I(1, 3, 1, 1)}) {
    const auto r = additivity_check(blocks, b, kTruncations);
    c.expect(r.pass, "blocks within " + to_string(b));
    ++families;
  }
  c.note(std::to_string(families) + " families, k <= " + std::to_string(kTruncations));
  return c.done();
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "measure preservation", measure_preservation},
      {2, "splinter residual identity", residual_identity},
      {3, "mass conservation", mass_conservation},
      {4, "doubling closed form", doubling_closed_form},
      {5, "odometer one-step cover", odometer_cover},
      {6, "golden rotation first splinter", golden_first_splinter},
      {7, "non-ergodic stall", non_ergodic_stall},
      {8, "orbit decomposition", orbit_decomposition},
      {9, "Caratheodory equality on measurable sets", caratheodory_equality},
      {10, "transport inequality", transport_inequality},
      {11, "mixing and ergodic diagnostics", mixing_diagnostics},
      {12, "Kakutani tower suite", kakutani_suite},
      {13, "truncated additivity", truncations},
  };
  int failed = 0;
  for (const auto& k : criteria) {
    Outcome o;
    try {
      o = k.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %2d: %s (%s)\n", o.pass ? "PASS" : "FAIL", k.id, k.title,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
