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

// Splinters of J1 with respect to J2 under a measure preserving map T:
//
//   A_1 = T^-1 J1 n J2,             B_1 = T^-1 J1 \ J2,
//   A_n = T^-1 B_(n-1) n (J2 \ C),  B_n = T^-1 B_(n-1) \ A_n,
//
// where C = A_1 u ... u A_(n-1). The A_n are disjoint pieces of J2, and
// mu(B_n) = mu(J2 \ (A_1 u ... u A_n)) at every step. For ergodic T the
// residual measure tends to 0.
//
// Map is any type with `set_type`, `preimage(set_type)` and `invertible()`;
// set_type needs the free set_* functions, component_count and to_string.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ergo/dynamics.hpp"
#include "ergo/errors.hpp"
#include "ergo/interval_set.hpp"

namespace ergo {

enum class SplinterStatus : std::uint8_t { kConverged, kStalled, kBudgetExhausted };

std::string to_string(SplinterStatus status);

struct SplinterOptions {
  /// Converged once mu(B_n) <= epsilon.
  Scalar epsilon = Scalar(Rational::pow2(-20));
  unsigned n_max = 256;
  /// Stalled once the last `stall_window` splinters are empty and B_n
  /// repeats an earlier residual from inside that window.
  unsigned stall_window = 8;
  /// Residuals with more components than this end the run.
  std::size_t component_budget = std::size_t{1} << 16;
};

/// Default stall window: max(8, q) for a rotation by p/q, 8 otherwise.
unsigned default_stall_window(const Transformation& t);

struct SplinterStep {
  unsigned step = 0;
  Scalar measure_a;
  Scalar measure_b;
  std::size_t components_b = 0;
  Scalar covered;  // mu(A_1 u ... u A_n)
};

template <class Set>
struct SplinterDecomposition {
  Set j1;
  Set j2;
  std::vector<Set> splinters;  // A_1 .. A_n
  std::vector<Set> residuals;  // B_1 .. B_n
  Set covered;
  std::vector<SplinterStep> trace;
  SplinterStatus status = SplinterStatus::kBudgetExhausted;
  SplinterOptions options;
  /// Why the run stopped when it did not converge.
  std::string stop_reason;
  /// For stalled runs: B_n equals B_(n - period).
  unsigned period = 0;

  [[nodiscard]] std::size_t steps() const { return residuals.size(); }
  [[nodiscard]] const Set& final_residual() const { return residuals.back(); }
};

/// One exact comparison per step.
struct StepCheck {
  unsigned step = 0;
  Scalar lhs;
  Scalar rhs;
  bool pass = false;
};

struct IdentityReport {
  std::vector<StepCheck> steps;
  bool pass = true;
};

/// mu(B_n) = mu(J2 \ (A_1 u ... u A_n)) at every recorded step.
template <class Set>
IdentityReport verify_residual_identity(const SplinterDecomposition<Set>& d) {
  IdentityReport r;
  Set covered;
  for (std::size_t i = 0; i < d.steps(); ++i) {
    covered = set_union(covered, d.splinters[i]);
    StepCheck c{static_cast<unsigned>(i + 1), set_measure(d.residuals[i]),
                set_measure(set_subtract(d.j2, covered)), false};
    c.pass = c.lhs == c.rhs;
    r.pass = r.pass && c.pass;
    r.steps.push_back(std::move(c));
  }
  return r;
}

/// mu(A_1) + ... + mu(A_n) + mu(B_n) = mu(J1) at every recorded step.
template <class Set>
IdentityReport verify_mass_conservation(const SplinterDecomposition<Set>& d) {
  IdentityReport r;
  const Scalar total = set_measure(d.j1);
  Scalar sum(0);
  for (std::size_t i = 0; i < d.steps(); ++i) {
    sum = sum + set_measure(d.splinters[i]);
    StepCheck c{static_cast<unsigned>(i + 1), sum + set_measure(d.residuals[i]), total, false};
    c.pass = c.lhs == c.rhs;
    r.pass = r.pass && c.pass;
    r.steps.push_back(std::move(c));
  }
  return r;
}

/// Splinters pairwise disjoint and inside J2. Disjointness is checked
/// incrementally against the running union.
template <class Set>
bool verify_splinters_disjoint(const SplinterDecomposition<Set>& d) {
  Set covered;
  for (const Set& a : d.splinters) {
    if (!set_is_empty(set_subtract(a, d.j2))) return false;
    if (!set_disjoint(a, covered)) return false;
    covered = set_union(covered, a);
  }
  return covered == d.covered;
}

/// All of the above; throws InvariantViolation naming the first failure.
template <class Set>
void assert_splinter_invariants(const SplinterDecomposition<Set>& d) {
  if (!verify_splinters_disjoint(d))
    throw InvariantViolation("splinters are not disjoint pieces of J2");
  for (const auto& c : verify_residual_identity(d).steps)
    if (!c.pass)
      throw InvariantViolation("residual identity fails at step " + std::to_string(c.step));
  for (const auto& c : verify_mass_conservation(d).steps)
    if (!c.pass)
      throw InvariantViolation("mass conservation fails at step " + std::to_string(c.step));
}

/**
 * Runs the splinter recursion until mu(B_n) <= epsilon, a stall is
 * certified, the step budget n_max is used up, or a residual exceeds the
 * component budget. The invariants are re-verified before returning.
 *
 * Throws PreconditionError unless mu(J1) = mu(J2) > 0 and epsilon > 0.
 */
template <class Map>
SplinterDecomposition<typename Map::set_type> splinter(const Map& t,
                                                       const typename Map::set_type& j1,
                                                       const typename Map::set_type& j2,
                                                       const SplinterOptions& options) {
  using Set = typename Map::set_type;
  const Scalar m1 = set_measure(j1);
  if (m1 != set_measure(j2)) throw PreconditionError("J1 and J2 differ in measure");
  if (m1.sign() <= 0) throw PreconditionError("J1 has measure zero");
  if (options.epsilon.sign() <= 0) throw PreconditionError("epsilon must be positive");
  if (options.n_max == 0) throw PreconditionError("n_max must be positive");

  SplinterDecomposition<Set> d;
  d.j1 = j1;
  d.j2 = j2;
  d.options = options;
  const unsigned window = std::max(1u, options.stall_window);
  unsigned empty_run = 0;
  Set previous = j1;

  for (unsigned n = 1; n <= options.n_max; ++n) {
    const Set pulled = t.preimage(previous);
    if (component_count(pulled) > options.component_budget) {
      d.stop_reason = "component budget exceeded at step " + std::to_string(n);
      break;
    }
    Set a = set_intersect(pulled, set_subtract(j2, d.covered));
    Set b = set_subtract(pulled, a);
    d.covered = set_union(d.covered, a);
    empty_run = set_is_empty(a) ? empty_run + 1 : 0;
    d.trace.push_back({n, set_measure(a), set_measure(b), component_count(b), set_measure(d.covered)});
    d.splinters.push_back(std::move(a));
    d.residuals.push_back(std::move(b));
    previous = d.residuals.back();

    if (d.trace.back().measure_b <= options.epsilon) {
      d.status = SplinterStatus::kConverged;
      break;
    }
    if (empty_run >= window) {
      // With no new splinters the state is B alone; a repeat means the
      // residual cycles forever.
      const std::size_t last = d.residuals.size() - 1;
      for (unsigned k = 1; k <= window && k <= last; ++k) {
        if (d.residuals[last - k] == d.residuals[last]) {
          d.period = k;
          break;
        }
      }
      if (d.period != 0) {
        d.status = SplinterStatus::kStalled;
        d.stop_reason = "residual repeats with period " + std::to_string(d.period) +
                        " and no splinters for " + std::to_string(empty_run) + " steps";
        break;
      }
    }
  }
  if (d.status == SplinterStatus::kBudgetExhausted && d.stop_reason.empty())
    d.stop_reason = "n_max reached";
  assert_splinter_invariants(d);
  return d;
}

/// T^-n J1 against B_n u T^-(n-1) A_1 u ... u A_n, for every n <= depth.
struct OrbitCheck {
  unsigned n = 0;
  Scalar pulled_measure;  // mu(T^-n J1)
  Scalar parts_measure;   // sum of the parts' measures
  bool equal = false;     // exact set equality
  bool disjoint = false;  // parts' measures add up to the union's
  [[nodiscard]] bool pass() const { return equal && disjoint; }
};

struct OrbitReport {
  std::vector<OrbitCheck> steps;
  bool pass = true;
};

/**
 * Checks T^-n(J1) = B_n u (union over i <= n of T^-(n-i) A_i) as an exact
 * set equality, with the parts disjoint, for n = 1 .. depth. Only
 * preimages are taken, so this works for the non-invertible doubling map.
 * Disjointness is measure-theoretic: the parts' measures must sum to the
 * measure of their union.
 *
 * Throws PreconditionError if depth exceeds the recorded steps and
 * BudgetExhausted if a pulled set exceeds `component_budget` components.
 */
template <class Map, class Set>
OrbitReport verify_orbit_decomposition(const Map& t, const SplinterDecomposition<Set>& d,
                                       unsigned depth,
                                       std::size_t component_budget = std::size_t{1} << 16) {
  if (depth == 0 || depth > d.steps())
    throw PreconditionError("orbit depth outside the recorded steps");
  auto pull = [&](const Set& s) {
    Set p = t.preimage(s);
    if (component_count(p) > component_budget)
      throw BudgetExhausted("orbit decomposition exceeds the component budget");
    return p;
  };
  OrbitReport r;
  Set lhs = d.j1;
  std::vector<Set> pulled;  // T^-(n-i) A_i for i = 1 .. n
  for (unsigned n = 1; n <= depth; ++n) {
    lhs = pull(lhs);
    for (Set& p : pulled) p = pull(p);
    pulled.push_back(d.splinters[n - 1]);
    const Set& b = d.residuals[n - 1];
    Set joined = b;
    Scalar sum = set_measure(b);
    for (const Set& p : pulled) {
      joined = set_union(joined, p);
      sum = sum + set_measure(p);
    }
    OrbitCheck c;
    c.n = n;
    c.pulled_measure = set_measure(lhs);
    c.parts_measure = sum;
    c.equal = joined == lhs;
    c.disjoint = set_measure(joined) == sum;
    r.pass = r.pass && c.pass();
    r.steps.push_back(std::move(c));
  }
  return r;
}

/// Whether T^-1 B = B, with the measure of the symmetric difference.
struct InvarianceReport {
  bool invariant = false;
  Scalar defect;
};

template <class Map>
InvarianceReport invariance_check(const Map& t, const typename Map::set_type& b) {
  const auto pre = t.preimage(b);
  InvarianceReport r;
  r.invariant = pre == b;
  r.defect = r.invariant ? Scalar(0) : set_measure(set_symmetric_difference(pre, b));
  return r;
}

/**
 * The transport chain for a set B:
 *
 *   mu(J1 n B) <= mu(B_n n B) + mu(A_1 n B) + ... + mu(A_n n B)  (each n)
 *   mu(J1 n B) <= mu(J2 n B) + mu(B_N)                          (final N)
 *
 * guaranteed when B is T-invariant. For other B the chain is still
 * evaluated and `broken_at` names the first failing step.
 */
struct TransportReport {
  InvarianceReport invariance;
  std::vector<StepCheck> steps;
  StepCheck limit;
  /// Every step holds with equality.
  bool equality = true;
  std::optional<unsigned> broken_at;
  [[nodiscard]] bool chain_holds() const { return !broken_at && limit.pass; }
  /// Holds whenever the guarantee applies; non-invariant B never fails.
  [[nodiscard]] bool pass() const { return !invariance.invariant || chain_holds(); }
};

template <class Map, class Set>
TransportReport transport_check(const Map& t, const SplinterDecomposition<Set>& d,
                                const Set& b) {
  TransportReport r;
  r.invariance = invariance_check(t, b);
  const Scalar lhs = set_measure(set_intersect(d.j1, b));
  Scalar splinter_sum(0);
  for (std::size_t i = 0; i < d.steps(); ++i) {
    splinter_sum = splinter_sum + set_measure(set_intersect(d.splinters[i], b));
    StepCheck c{static_cast<unsigned>(i + 1), lhs,
                set_measure(set_intersect(d.residuals[i], b)) + splinter_sum, false};
    c.pass = c.lhs <= c.rhs;
    r.equality = r.equality && c.lhs == c.rhs;
    if (!c.pass && !r.broken_at) r.broken_at = c.step;
    r.steps.push_back(std::move(c));
  }
  const Scalar tail = d.steps() == 0 ? set_measure(d.j1) : set_measure(d.final_residual());
  r.limit = {static_cast<unsigned>(d.steps()), lhs, set_measure(set_intersect(d.j2, b)) + tail, false};
  r.limit.pass = r.limit.lhs <= r.limit.rhs;
  return r;
}

/// Finite additivity over a disjoint family, truncated at k = 1 .. n_tail:
/// mu(union of A_i n B, i <= k) against the sum of mu(A_i n B), plus the
/// measures mu(union of A_i, i > k) which must not increase.
struct AdditivityReport {
  std::vector<StepCheck> truncations;
  std::vector<Scalar> tail_measures;  // k = 0 .. n_tail
  bool tails_monotone = true;
  bool pass = true;
};

/// Throws PreconditionError if the family is not pairwise disjoint.
template <class Set>
AdditivityReport additivity_check(const std::vector<Set>& family, const Set& b, unsigned n_tail) {
  Set seen;
  for (const Set& a : family) {
    if (!set_disjoint(a, seen)) throw PreconditionError("family is not pairwise disjoint");
    seen = set_union(seen, a);
  }
  const std::size_t k_max = std::min<std::size_t>(n_tail, family.size());
  AdditivityReport r;
  Set joined;
  Scalar sum(0);
  for (std::size_t k = 0; k < k_max; ++k) {
    const Set piece = set_intersect(family[k], b);
    joined = set_union(joined, piece);
    sum = sum + set_measure(piece);
    StepCheck c{static_cast<unsigned>(k + 1), set_measure(joined), sum, false};
    c.pass = c.lhs == c.rhs;
    r.pass = r.pass && c.pass;
    r.truncations.push_back(std::move(c));
  }
  // Suffix unions, built from the back of the family.
  std::vector<Scalar> suffix(family.size() + 1, Scalar(0));
  Set tail;
  for (std::size_t k = family.size(); k-- > 0;) {
    tail = set_union(tail, family[k]);
    suffix[k] = set_measure(tail);
  }
  for (std::size_t k = 0; k <= k_max; ++k) {
    r.tail_measures.push_back(suffix[k]);
    if (k > 0 && suffix[k] > suffix[k - 1]) r.tails_monotone = false;
  }
  r.pass = r.pass && r.tails_monotone;
  return r;
}

}  // namespace ergo
