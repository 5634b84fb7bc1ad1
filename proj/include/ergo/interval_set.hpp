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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/scalar.hpp"

namespace ergo {

/// Half-open [lo, hi) with 0 <= lo < hi <= 1.
struct Interval {
  Scalar lo;
  Scalar hi;

  [[nodiscard]] Scalar length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Anchor : std::uint8_t { kZero, kOne };
enum class Parity : std::uint8_t { kEven, kOdd };

/// Dyadic block I_n = [1 - 2^-n, 1 - 2^-(n+1)), accumulating at 1.
Interval block_at_one(unsigned n);
/// Dyadic block D_n = [2^-(n+1), 2^-n), accumulating at 0.
Interval block_at_zero(unsigned n);

/// Union of the blocks of one anchor with index >= start and index parity
/// equal to the parity of start.
struct ParityTail {
  Anchor anchor;
  unsigned start;

  [[nodiscard]] Parity parity() const { return start % 2 == 0 ? Parity::kEven : Parity::kOdd; }
  /// Closed-form sum of 2^-(n+1) over the tail's blocks: 2^(1-start) / 3.
  [[nodiscard]] Rational measure() const;
  friend bool operator==(const ParityTail&, const ParityTail&) = default;
};

/**
 * Measurable subset of [0, 1): a finite union of half-open intervals plus
 * at most one parity tail per anchor.
 *
 * The representation is canonical. Intervals are sorted, disjoint and
 * never adjacent; tails are disjoint from the intervals and start at the
 * smallest index for which every later block of the same parity lies in
 * the set. Two sets are therefore equal as point sets, up to the point 0
 * which no zero tail reaches, iff their representations are equal.
 */
class IntervalSet {
 public:
  IntervalSet() = default;

  static IntervalSet full();
  /// [lo, hi); empty when lo == hi. Throws PreconditionError outside [0, 1].
  static IntervalSet interval(const Scalar& lo, const Scalar& hi);
  /// Normalizing constructor; the intervals may overlap and be unsorted.
  static IntervalSet from_intervals(std::vector<Interval> intervals);
  /// Intervals already sorted by lo and pairwise disjoint; only adjacent
  /// pieces are merged. Cheaper than from_intervals for bulk construction.
  static IntervalSet from_sorted_intervals(std::vector<Interval> intervals);
  static IntervalSet tail(Anchor anchor, unsigned start, Parity parity);
  /// A = union of the even blocks I_0, I_2, ... (the Kakutani tower floor).
  static IntervalSet kakutani_floor() { return tail(Anchor::kOne, 0, Parity::kEven); }

  [[nodiscard]] const std::vector<Interval>& intervals() const { return intervals_; }
  [[nodiscard]] const std::optional<ParityTail>& zero_tail() const { return zero_tail_; }
  [[nodiscard]] const std::optional<ParityTail>& one_tail() const { return one_tail_; }
  [[nodiscard]] std::vector<ParityTail> tails() const;

  [[nodiscard]] bool empty() const { return intervals_.empty() && !zero_tail_ && !one_tail_; }
  [[nodiscard]] bool has_tails() const { return zero_tail_ || one_tail_; }
  /// Number of finite intervals plus tails.
  [[nodiscard]] std::size_t component_count() const;
  [[nodiscard]] Scalar measure() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  friend struct SetAlgebra;

  std::vector<Interval> intervals_;
  std::optional<ParityTail> zero_tail_;
  std::optional<ParityTail> one_tail_;
};

IntervalSet set_union(const IntervalSet& s, const IntervalSet& t);
IntervalSet set_intersect(const IntervalSet& s, const IntervalSet& t);
IntervalSet set_subtract(const IntervalSet& s, const IntervalSet& t);
IntervalSet set_symmetric_difference(const IntervalSet& s, const IntervalSet& t);
/// Complement within [0, 1).
IntervalSet set_complement(const IntervalSet& s);
bool set_subset(const IntervalSet& s, const IntervalSet& t);
inline bool set_equals(const IntervalSet& s, const IntervalSet& t) { return s == t; }
inline bool set_is_empty(const IntervalSet& s) { return s.empty(); }
inline Scalar set_measure(const IntervalSet& s) { return s.measure(); }
bool set_disjoint(const IntervalSet& s, const IntervalSet& t);

/// s + t mod 1. Throws UnsupportedRepresentation when s has tails.
IntervalSet set_translate_mod1(const IntervalSet& s, const Scalar& t);

/// Finite approximation of a set: every tail is cut after `blocks` blocks.
/// `dropped` is the exact measure of what was removed.
struct TruncatedSet {
  IntervalSet finite;
  Rational dropped;
};
TruncatedSet truncate_tails(const IntervalSet& s, unsigned blocks);

/// Canonical text: "lo..hi" intervals, then "tail(zero|one,N,even|odd)",
/// comma separated; "empty" for the empty set.
std::string to_string(const IntervalSet& s);
/// Inverse of to_string. Also accepts "full". Non-canonical input (unsorted,
/// overlapping, tail starts of the wrong parity) is normalized.
IntervalSet parse_interval_set(std::string_view text, std::optional<Irrational> universe);

std::ostream& operator<<(std::ostream& os, const IntervalSet& s);

// Building blocks for piecewise maps. A set near 0 is described beyond
// the point 2^-zero_cut by which parities of blocks D_n (n >= zero_cut) it
// contains; likewise near 1 beyond 1 - 2^-one_cut with blocks I_n. Bit 0 of
// a pattern is the even blocks, bit 1 the odd ones.
struct ExpandedSet {
  unsigned zero_cut = 1;
  unsigned one_cut = 1;
  std::uint8_t zero_pattern = 0;
  std::uint8_t one_pattern = 0;
  std::vector<Interval> middle;  // inside [2^-zero_cut, 1 - 2^-one_cut)
};

/// Smallest cutoffs that leave no finite endpoint inside the end regions.
unsigned required_zero_cut(const IntervalSet& s);
unsigned required_one_cut(const IntervalSet& s);
/// Requires cutoffs at least the required ones.
ExpandedSet expand(const IntervalSet& s, unsigned zero_cut, unsigned one_cut);
IntervalSet collapse(const ExpandedSet& e);

}  // namespace ergo
