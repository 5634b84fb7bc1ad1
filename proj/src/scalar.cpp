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

#include "ergo/scalar.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <ostream>
#include <vector>

#include "ergo/errors.hpp"

namespace ergo {

namespace {

// Convergents c_j = num[j] / den[j] of [0; a, a, a, ...]. Consecutive
// convergents bracket alpha and 1 / (den[j] * den[j+1]) is the bracket width.
class ConvergentCache {
 public:
  Enclosure get(Irrational tag, int precision) {
    std::lock_guard lock(mu_);
    Table& t = tables_[static_cast<std::size_t>(tag)];
    if (t.num.empty()) init(t, tag);
    if (precision < 0) precision = 0;
    auto& memo = t.memo;
    if (static_cast<std::size_t>(precision) < memo.size() && memo[precision]) return *memo[precision];
    BigInt target = 1;
    target <<= precision;
    std::size_t j = 0;
    for (;; ++j) {
      while (t.num.size() < j + 2) grow(t);
      if (t.den[j] * t.den[j + 1] >= target) break;
    }
    const Rational a(BigRational(t.num[j], t.den[j]));
    const Rational b(BigRational(t.num[j + 1], t.den[j + 1]));
    Enclosure e = a < b ? Enclosure{a, b} : Enclosure{b, a};
    if (memo.size() <= static_cast<std::size_t>(precision)) memo.resize(precision + 1);
    memo[precision] = e;
    return e;
  }

 private:
  struct Table {
    std::int64_t quotient = 1;
    std::vector<BigInt> num;
    std::vector<BigInt> den;
    std::vector<std::optional<Enclosure>> memo;
  };

  static void init(Table& t, Irrational tag) {
    t.quotient = tag == Irrational::kGoldenConjugate ? 1 : 2;
    // [0; a, a, ...]: c_0 = 0/1, c_1 = 1/a.
    t.num = {0, 1};
    t.den = {1, t.quotient};
  }

  static void grow(Table& t) {
    const std::size_t n = t.num.size();
    t.num.push_back(t.quotient * t.num[n - 1] + t.num[n - 2]);
    t.den.push_back(t.quotient * t.den[n - 1] + t.den[n - 2]);
  }

  std::mutex mu_;
  std::array<Table, 2> tables_;
};

ConvergentCache& cache() {
  static ConvergentCache c;
  return c;
}

std::atomic<int> g_initial_precision{32};
std::atomic<int> g_step_budget{256};
std::atomic<int> g_max_steps{0};

void note_steps(int steps) {
  int cur = g_max_steps.load(std::memory_order_relaxed);
  while (steps > cur && !g_max_steps.compare_exchange_weak(cur, steps)) {
  }
}

// Sign of p + q * alpha with q != 0.
int refine_sign(const Rational& p, const Rational& q, Irrational tag) {
  const int start = g_initial_precision.load(std::memory_order_relaxed);
  const int budget = g_step_budget.load(std::memory_order_relaxed);
  for (int step = 0; step < budget; ++step) {
    const Enclosure e = enclose(tag, start + step);
    Rational lo = p + q * e.lo;
    Rational hi = p + q * e.hi;
    if (q.sign() < 0) std::swap(lo, hi);
    if (lo.sign() > 0 || hi.sign() < 0) {
      note_steps(step);
      return lo.sign() > 0 ? 1 : -1;
    }
  }
  throw BudgetExhausted("scalar comparison exceeded the refinement budget");
}

}  // namespace

std::string_view irrational_name(Irrational tag) {
  return tag == Irrational::kGoldenConjugate ? "golden" : "sqrt2m1";
}

Irrational parse_irrational(std::string_view name) {
  if (name == "golden") return Irrational::kGoldenConjugate;
  if (name == "sqrt2m1") return Irrational::kSqrt2Minus1;
  throw ParseError("unknown irrational '" + std::string(name) +
                   "' (exact mode accepts only: golden, sqrt2m1)");
}

Enclosure enclose(Irrational tag, int precision) { return cache().get(tag, precision); }

RefinementPolicy refinement_policy() {
  return {g_initial_precision.load(), g_step_budget.load()};
}

void set_refinement_policy(RefinementPolicy policy) {
  if (policy.step_budget <= 0 || policy.initial_precision < 0)
    throw PreconditionError("refinement policy must be positive");
  g_initial_precision = policy.initial_precision;
  g_step_budget = policy.step_budget;
}

int max_refinement_steps_used() { return g_max_steps.load(); }

Scalar::Scalar(Rational p) : p_(std::move(p)) {}

Scalar::Scalar(Rational p, Rational q, Irrational tag) : p_(std::move(p)), q_(std::move(q)) {
  if (!q_.is_zero()) tag_ = tag;
}

std::optional<Irrational> common_tag(const Scalar& a, const Scalar& b) {
  if (a.tag() && b.tag() && *a.tag() != *b.tag())
    throw IncompatibleBasis("scalars from different irrational universes");
  return a.tag() ? a.tag() : b.tag();
}

int Scalar::sign() const {
  if (!tag_) return p_.sign();
  return refine_sign(p_, q_, *tag_);
}

Enclosure Scalar::bounds(int precision) const {
  if (!tag_) return {p_, p_};
  const Enclosure e = enclose(*tag_, precision);
  Rational lo = p_ + q_ * e.lo;
  Rational hi = p_ + q_ * e.hi;
  if (q_.sign() < 0) std::swap(lo, hi);
  return {lo, hi};
}

Rational Scalar::floor() const {
  if (!tag_) return p_.floor();
  const int start = g_initial_precision.load(std::memory_order_relaxed);
  const int budget = g_step_budget.load(std::memory_order_relaxed);
  for (int step = 0; step < budget; ++step) {
    const Enclosure e = bounds(start + step);
    Rational f = e.lo.floor();
    if (f == e.hi.floor()) {
      note_steps(step);
      return f;
    }
  }
  throw BudgetExhausted("scalar floor exceeded the refinement budget");
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  const auto tag = common_tag(a, b);
  if (!tag) return Scalar(a.p_ + b.p_);
  return Scalar(a.p_ + b.p_, a.q_ + b.q_, *tag);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  const auto tag = common_tag(a, b);
  if (!tag) return Scalar(a.p_ - b.p_);
  return Scalar(a.p_ - b.p_, a.q_ - b.q_, *tag);
}

Scalar operator*(const Scalar& a, const Rational& k) {
  if (!a.tag_) return Scalar(a.p_ * k);
  return Scalar(a.p_ * k, a.q_ * k, *a.tag_);
}

namespace {

// alpha is a root of x^2 + t x - 1: t = 1 (golden), t = 2 (sqrt2m1).
Rational minimal_poly_t(Irrational tag) {
  return Rational(tag == Irrational::kGoldenConjugate ? 1 : 2);
}

}  // namespace

Scalar operator*(const Scalar& a, const Scalar& b) {
  const auto tag = common_tag(a, b);
  if (!tag) return Scalar(a.p_ * b.p_);
  // alpha^2 = 1 - t alpha
  const Rational qq = a.q_ * b.q_;
  return Scalar(a.p_ * b.p_ + qq, a.p_ * b.q_ + a.q_ * b.p_ - minimal_poly_t(*tag) * qq, *tag);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw PreconditionError("division by zero");
  const auto tag = common_tag(a, b);
  if (!tag) return Scalar(a.p_ / b.p_);
  // conjugate alpha' = -t - alpha; b * b' = r^2 - t r s - s^2 is rational
  const Rational t = minimal_poly_t(*tag);
  const Rational& r = b.p_;
  const Rational& s = b.q_;
  const Rational norm = r * r - t * r * s - s * s;
  const Scalar conj(r - t * s, -s, *tag);
  return (a * conj) * (Rational(1) / norm);
}

Scalar Scalar::operator-() const {
  if (!tag_) return Scalar(-p_);
  return Scalar(-p_, -q_, *tag_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.tag_ == b.tag_ && a.p_ == b.p_ && a.q_ == b.q_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  const auto tag = common_tag(a, b);
  if (!tag || a.q_ == b.q_) return a.p_ <=> b.p_;
  const int s = refine_sign(a.p_ - b.p_, a.q_ - b.q_, *tag);
  return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

Scalar mod1(const Scalar& a) { return a - Scalar(a.floor()); }

std::string to_decimal(const Scalar& a, int digits) {
  if (digits < 0) throw PreconditionError("digits must be non-negative");
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const Rational s(BigRational{scale});
  const Rational half(1, 2);

  BigInt n;
  if (a.is_rational()) {
    const Rational& v = a.rational_part();
    const Rational m = (v.abs() * s + half).floor();
    n = v.sign() < 0 ? BigInt(-m.numerator()) : m.numerator();
  } else {
    const int start = refinement_policy().initial_precision;
    const int budget = refinement_policy().step_budget;
    bool done = false;
    // Each extra decimal digit needs about 3.3 more bits; start there.
    for (int step = 0; step < budget && !done; ++step) {
      const Enclosure e = a.bounds(start + 4 * digits + step);
      const Rational lo = (e.lo * s + half).floor();
      const Rational hi = (e.hi * s + half).floor();
      if (lo == hi) {
        n = lo.numerator();
        done = true;
      }
    }
    if (!done) throw BudgetExhausted("decimal rendering exceeded the refinement budget");
  }

  const bool neg = n < 0;
  std::string body = (neg ? BigInt(-n) : n).str();
  if (static_cast<int>(body.size()) <= digits)
    body.insert(0, static_cast<std::size_t>(digits + 1) - body.size(), '0');
  if (digits > 0) body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  return neg ? "-" + body : body;
}

std::string report_decimal(const Scalar& a, int digits) {
  return (a.is_rational() ? "" : "~") + to_decimal(a, digits);
}

std::string to_exact_string(const Scalar& a) {
  if (a.is_rational()) return a.rational_part().to_string();
  const Rational& q = a.alpha_part();
  return a.rational_part().to_string() + (q.sign() < 0 ? "-" : "+") + q.abs().to_string() +
         "*alpha";
}

Scalar parse_scalar(std::string_view text, std::optional<Irrational> universe) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  constexpr std::string_view kAlpha = "alpha";
  if (text.size() < kAlpha.size() || text.substr(text.size() - kAlpha.size()) != kAlpha)
    return Scalar(Rational::parse(text));
  if (!universe)
    throw ParseError("'" + std::string(text) + "' mentions alpha but no irrational is configured");

  std::string_view rest = text.substr(0, text.size() - kAlpha.size());
  if (!rest.empty() && rest.back() == '*') rest.remove_suffix(1);
  // Split "p+q" at the last sign that is not leading.
  std::size_t cut = std::string_view::npos;
  for (std::size_t i = rest.size(); i-- > 1;) {
    if (rest[i] == '+' || rest[i] == '-') {
      cut = i;
      break;
    }
  }
  Rational p(0);
  std::string_view qs = rest;
  if (cut != std::string_view::npos) {
    p = Rational::parse(trim(rest.substr(0, cut)));
    qs = rest.substr(cut);
  }
  qs = trim(qs);
  Rational q;
  if (qs.empty() || qs == "+")
    q = Rational(1);
  else if (qs == "-")
    q = Rational(-1);
  else
    q = Rational::parse(qs);
  return Scalar(p, q, *universe);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_exact_string(s); }

}  // namespace ergo
