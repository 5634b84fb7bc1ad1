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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "ergo/rational.hpp"

namespace ergo {

/// Built-in irrationals. Only numbers with a known continued fraction are
/// offered so that irrationality is certain and comparisons terminate.
enum class Irrational : std::uint8_t {
  kGoldenConjugate,  // (sqrt(5) - 1) / 2 = [0; 1, 1, 1, ...]
  kSqrt2Minus1,      // sqrt(2) - 1       = [0; 2, 2, 2, ...]
};

std::string_view irrational_name(Irrational tag);
/// Accepts "golden" and "sqrt2m1". Anything else, including decimal
/// literals, is rejected with ParseError.
Irrational parse_irrational(std::string_view name);

/// Rational enclosure of a tagged irrational.
struct Enclosure {
  Rational lo;
  Rational hi;
};

/// Enclosure [lo, hi] of the irrational with hi - lo <= 2^-precision.
/// Enclosures are nested in precision. Backed by a shared convergent cache
/// that is extended under a lock, so concurrent callers are safe.
Enclosure enclose(Irrational tag, int precision);

/// Comparison refinement settings. One step adds one bit of precision.
struct RefinementPolicy {
  int initial_precision = 32;
  int step_budget = 256;
};

RefinementPolicy refinement_policy();
void set_refinement_policy(RefinementPolicy policy);
/// Largest number of refinement steps any single decision has needed so far.
int max_refinement_steps_used();

/**
 * Exact value p + q * alpha, alpha an irrational chosen from the built-in
 * tags. The tag is absent exactly when q is zero.
 *
 * Equality is componentwise, which is sound because alpha is irrational.
 * Ordering refines the enclosure of alpha until the sign of the difference
 * is certain, raising BudgetExhausted rather than guessing.
 */
class Scalar {
 public:
  Scalar() = default;
  Scalar(Rational p);  // NOLINT(google-explicit-constructor)
  Scalar(std::int64_t p) : Scalar(Rational(p)) {}  // NOLINT
  Scalar(Rational p, Rational q, Irrational tag);

  /// The tagged irrational itself.
  static Scalar alpha(Irrational tag) { return {Rational(0), Rational(1), tag}; }

  [[nodiscard]] const Rational& rational_part() const { return p_; }
  [[nodiscard]] const Rational& alpha_part() const { return q_; }
  [[nodiscard]] std::optional<Irrational> tag() const { return tag_; }
  [[nodiscard]] bool is_rational() const { return !tag_; }

  [[nodiscard]] int sign() const;
  [[nodiscard]] bool is_zero() const { return !tag_ && p_.is_zero(); }

  /// Rational enclosure of the value at the given precision of alpha.
  [[nodiscard]] Enclosure bounds(int precision) const;
  /// Largest integer not exceeding the value.
  [[nodiscard]] Rational floor() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Rational& k);
  friend Scalar operator*(const Rational& k, const Scalar& a) { return a * k; }
  /// Field product in Q(alpha), reducing alpha^2 by its minimal polynomial.
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  /// Field quotient via the conjugate. Throws PreconditionError on zero.
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  Rational p_;
  Rational q_;
  std::optional<Irrational> tag_;
};

/// Throws IncompatibleBasis unless the scalars share a universe.
std::optional<Irrational> common_tag(const Scalar& a, const Scalar& b);

/// a - k for the unique integer k placing the result in [0, 1).
Scalar mod1(const Scalar& a);

/// Fixed-point decimal with the requested digits after the point, rounded
/// to nearest (ties away from zero). Irrational values are never ties.
std::string to_decimal(const Scalar& a, int digits);

/// Decimal rendering for reports: prefixed "~" when the value involves alpha.
std::string report_decimal(const Scalar& a, int digits = 12);

/// Canonical exact text: "p" or "p+q*alpha" / "p-q*alpha" with p and q
/// written as exact fractions.
std::string to_exact_string(const Scalar& a);

/// Inverse of to_exact_string. The word "alpha" denotes `universe`; text
/// mentioning alpha without a universe is rejected.
Scalar parse_scalar(std::string_view text, std::optional<Irrational> universe);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace ergo
