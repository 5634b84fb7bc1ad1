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

// Measure bases, density windows, the Caratheodory gap and correlation
// diagnostics. Outer measure is only ever evaluated on representable sets,
// where it coincides with the measure; reports say so in their header.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/dynamics.hpp"
#include "ergo/errors.hpp"
#include "ergo/interval_set.hpp"
#include "ergo/splinter.hpp"

namespace ergo {

inline constexpr std::string_view kRestrictionNotice =
    "outer measure evaluated as measure on representable (measurable) sets";
inline constexpr std::string_view kThetaNotice =
    "theta < 2 can only be exhibited for measurable sets, where theta = 1";

/**
 * A countable family of intervals enumerated level by level.
 *
 * dyadic(d): levels 0..d, level k holding [j 2^-k, (j+1) 2^-k) left to right.
 * arcs(q):   levels 1..q, level m holding [a/m, b/m) for 0 <= a < b <= m in
 *            lexicographic order, skipping pairs already present at a
 *            smaller denominator. Arcs do not wrap around 1.
 */
class MeasureBasis {
 public:
  enum class Kind : std::uint8_t { kDyadic, kArcs };

  static MeasureBasis dyadic(unsigned depth_max);
  static MeasureBasis arcs(unsigned denominator_max);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] unsigned bound() const { return bound_; }
  [[nodiscard]] unsigned first_level() const { return kind_ == Kind::kDyadic ? 0 : 1; }
  /// "dyadic:3", "arcs:6".
  [[nodiscard]] std::string descriptor() const;

  [[nodiscard]] std::vector<Interval> level(unsigned k) const;
  /// Every element in enumeration order.
  [[nodiscard]] std::vector<Interval> elements() const;
  /// Calls f on elements in order until it returns true; reports whether
  /// it did.
  bool find_first(const std::function<bool(const Interval&)>& f) const;

 private:
  Kind kind_ = Kind::kDyadic;
  unsigned bound_ = 0;
};

/// Parses "dyadic:N" or "arcs:N".
MeasureBasis parse_basis(std::string_view text);

/// Whether mu(S n J) > (1 - epsilon) mu(J), compared exactly.
bool is_density_window(const IntervalSet& s, const Interval& j, const Scalar& epsilon);

/// First basis element that is a window of density to within epsilon for S.
/// Throws PreconditionError unless 0 < epsilon < 1 and mu(S) > 0.
std::optional<Interval> density_search(const IntervalSet& s, const Scalar& epsilon,
                                       const MeasureBasis& basis);

struct DensityPair {
  std::optional<Interval> j1;
  std::optional<Interval> j2;
  unsigned level = 0;  // where the pair was found, or the deepest level tried
  [[nodiscard]] bool found() const { return j1 && j2; }
};

/// Equal-measure windows of density for A1 and A2 from one level of the
/// basis, searching levels in order. When nothing is found, j1 and j2 hold
/// whatever the deepest level produced for each set on its own.
DensityPair density_pair(const IntervalSet& a1, const IntervalSet& a2, const Scalar& epsilon,
                         const MeasureBasis& basis);

struct GapReport {
  Scalar theta;
  IntervalSet j;
  Scalar inside;   // mu(B n J)
  Scalar outside;  // mu(B^c n J)
  bool caratheodory_equality = false;
};

/// theta = (mu(B n J) + mu(B^c n J)) / mu(J). Throws PreconditionError on
/// a null J.
GapReport gap_theta(const IntervalSet& b, const IntervalSet& j);

/// mu(T^-j C n D) for j = 1..m.
struct CorrelationReport {
  std::vector<Scalar> terms;
  Scalar average;  // (1/m) * sum of terms
  Scalar product;  // mu(C) mu(D)
};

/// Component budget for the correlation diagnostics; the doubling map needs
/// 2^j components for T^-j of a half interval.
inline constexpr std::size_t kCorrelationComponentBudget = std::size_t{1} << 21;

/// Throws BudgetExhausted when a pulled set exceeds `component_budget`.
CorrelationReport correlation_average(const Transformation& t, const IntervalSet& c,
                                      const IntervalSet& d, unsigned m,
                                      std::size_t component_budget = kCorrelationComponentBudget);

/// mu(T^-j C n D) - mu(C) mu(D) for j = 1..n_max.
std::vector<Scalar> mixing_trace(const Transformation& t, const IntervalSet& c,
                                 const IntervalSet& d, unsigned n_max,
                                 std::size_t component_budget = kCorrelationComponentBudget);

struct ReductionPair {
  Interval j;
  Interval k;
  SplinterStatus status = SplinterStatus::kBudgetExhausted;
  std::size_t steps = 0;
  Scalar in_j;      // mu(B n J)
  Scalar in_k;      // mu(B n K)
  Scalar residual;  // mu(B_n) at the end of the run
  bool chain_holds = false;
  /// mu(B n K) >= mu(B n J) - epsilon; only meaningful when converged.
  bool inequality = false;
};

struct ReductionReport {
  InvarianceReport invariance;
  std::vector<ReductionPair> pairs;
  std::size_t converged = 0;
  std::size_t stalled = 0;
  std::size_t exhausted = 0;
  /// Every converged pair satisfies the inequality and every transport
  /// chain holds. Only asserted for invariant B.
  bool pass = true;
  [[nodiscard]] bool diagnostic() const { return !invariance.invariant; }
};

/**
 * For the first `sample` ordered pairs (J, K), J != K, of equal-measure
 * basis elements from a common level (all pairs when sample is 0), runs
 * splinter(T, J, K) and the transport chain for B, and checks
 * mu(B n K) >= mu(B n J) - epsilon on converged pairs.
 */
ReductionReport reduction_check(const Transformation& t, const IntervalSet& b,
                                const MeasureBasis& basis, std::size_t sample,
                                const Scalar& epsilon, unsigned n_max,
                                std::size_t component_budget = std::size_t{1} << 16);

}  // namespace ergo
