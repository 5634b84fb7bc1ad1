#include <cmath>
#include <random>

#include "doctest.h"
#include "ergo/errors.hpp"
#include "ergo/scalar.hpp"
#include "oracles.hpp"

using namespace ergo;

namespace {

const Irrational kGolden = Irrational::kGoldenConjugate;

Scalar S(std::int64_t n, std::int64_t d) { return Scalar(Rational(n, d)); }
Scalar G(Rational p, Rational q) { return Scalar(std::move(p), std::move(q), kGolden); }

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -3) == Rational(-1, 3));
  CHECK((Rational(1, 2) + Rational(1, 4)) == Rational(3, 4));
  CHECK(Rational(-7, 2).floor() == Rational(-4));
  CHECK(Rational::parse("-6/8") == Rational(-3, 4));
  CHECK_THROWS_AS(Rational::parse("0.5"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);

  // Overflow of the 64-bit fast path spills to big integers and comes back.
  const Rational big = Rational::pow2(80);
  CHECK_FALSE(big.is_small());
  CHECK(big.to_string() == "1208925819614629174706176");
  const Rational back = big / Rational::pow2(79);
  CHECK(back.is_small());
  CHECK(back == Rational(2));
  const Rational m = Rational(INT64_MAX) * Rational(INT64_MAX) / Rational(INT64_MAX);
  CHECK(m == Rational(INT64_MAX));
}

TEST_CASE("scalar_add examples") {
  CHECK(S(1, 2) + S(1, 4) == S(3, 4));
  // (0, 1) + (1, -1) cancels to exactly 1 with the tag dropped.
  const Scalar sum = G(0, 1) + G(1, -1);
  CHECK(sum == Scalar(1));
  CHECK(sum.is_rational());
  const Scalar x = S(3, 4) + G(0, -1);
  CHECK(x.rational_part() == Rational(3, 4));
  CHECK(x.alpha_part() == Rational(-1));
}

TEST_CASE("mixing irrational tags is an error") {
  const Scalar a = Scalar::alpha(kGolden);
  const Scalar b = Scalar::alpha(Irrational::kSqrt2Minus1);
  CHECK_THROWS_AS(a + b, IncompatibleBasis);
  CHECK_THROWS_AS((void)(a < b), IncompatibleBasis);
  CHECK_NOTHROW(a + S(1, 2));
}

TEST_CASE("scalar_cmp examples") {
  CHECK(S(1, 2) < Scalar::alpha(kGolden));
  CHECK(S(1, 3) == S(1, 3));
  // 1 - alpha exceeds 1/2 - alpha/2 by (1 - alpha)/2 > 0.
  CHECK(G(1, -1) > G(Rational(1, 2), Rational(-1, 2)));
  // Convergent bounds quoted for the golden conjugate: 0.6 < alpha < 0.625.
  CHECK(S(3, 5) < Scalar::alpha(kGolden));
  CHECK(Scalar::alpha(kGolden) < S(5, 8));
}

TEST_CASE("scalar_mod1 examples") {
  CHECK(mod1(S(3, 2)) == S(1, 2));
  CHECK(mod1(Scalar::alpha(kGolden)) == Scalar::alpha(kGolden));
  CHECK(mod1(G(Rational(-1, 4), 1)) == G(Rational(-1, 4), 1));
  CHECK(mod1(G(0, -1)) == G(1, -1));
  CHECK(mod1(S(-1, 4)) == S(3, 4));
}

TEST_CASE("scalar_to_decimal examples") {
  CHECK(to_decimal(S(1, 2), 4) == "0.5000");
  CHECK(to_decimal(Scalar::alpha(kGolden), 4) == "0.6180");
  CHECK(to_decimal(G(Rational(3, 4), -1), 4) == "0.1320");
  CHECK(report_decimal(G(Rational(3, 4), -1), 4) == "~0.1320");
  CHECK(to_decimal(S(-1, 8), 2) == "-0.13");
  CHECK(to_decimal(Scalar::alpha(Irrational::kSqrt2Minus1), 6) == "0.414214");
  CHECK(to_decimal(S(5, 1), 0) == "5");
}

TEST_CASE("exact text round trip") {
  for (const Scalar& s : {S(3, 4), G(Rational(3, 4), -1), G(0, 1), G(Rational(-1, 3), Rational(5, 7))}) {
    CHECK(parse_scalar(to_exact_string(s), kGolden) == s);
  }
  CHECK(to_exact_string(G(Rational(3, 4), -1)) == "3/4-1*alpha");
  CHECK(parse_scalar("5/4-alpha", kGolden) == G(Rational(5, 4), -1));
  CHECK_THROWS_AS(parse_scalar("1+1*alpha", std::nullopt), ParseError);
  CHECK_THROWS_AS(parse_irrational("0.618"), ParseError);
}

TEST_CASE("enclosures are nested and tight") {
  for (Irrational tag : {kGolden, Irrational::kSqrt2Minus1}) {
    Enclosure prev = enclose(tag, 0);
    for (int k = 1; k < 300; ++k) {
      const Enclosure e = enclose(tag, k);
      CHECK(prev.lo <= e.lo);
      CHECK(e.hi <= prev.hi);
      CHECK(e.hi - e.lo <= Rational::pow2(-k));
      CHECK(oracle::quadratic_sign(e.lo, Rational(-1), tag) < 0);  // lo < alpha
      CHECK(oracle::quadratic_sign(e.hi, Rational(-1), tag) > 0);  // hi > alpha
      prev = e;
    }
  }
}

TEST_CASE("order matches the algebraic sign oracle on fuzzed coefficients") {
  std::mt19937_64 rng(20261017);
  std::uniform_int_distribution<std::int64_t> num(-1 << 20, 1 << 20);
  std::uniform_int_distribution<int> den_exp(0, 20);
  auto coeff = [&] { return Rational(num(rng), std::int64_t{1} << den_exp(rng)); };
  for (Irrational tag : {kGolden, Irrational::kSqrt2Minus1}) {
    for (int i = 0; i < 3000; ++i) {
      const Scalar a(coeff(), coeff(), tag);
      const Scalar b(coeff(), coeff(), tag);
      const Scalar c(coeff(), coeff(), tag);
      const auto expected = oracle::quadratic_sign(a.rational_part() - b.rational_part(),
                                                   a.alpha_part() - b.alpha_part(), tag);
      const auto got = a <=> b;
      CHECK((got < 0) == (expected < 0));
      CHECK((got == 0) == (expected == 0));
      CHECK((a == b) == (a.rational_part() == b.rational_part() && a.alpha_part() == b.alpha_part()));
      // Translation invariance and exact cancellation.
      CHECK(((a + c) <=> (b + c)) == got);
      CHECK((a + b) - b == a);
      CHECK((a + b) + c == a + (b + c));
    }
  }
  CHECK(max_refinement_steps_used() <= refinement_policy().step_budget);
}

TEST_CASE("refinement budget exhaustion is a hard error") {
  const RefinementPolicy saved = refinement_policy();
  set_refinement_policy({4, 2});
  // alpha - 987/1597 is about 1.8e-7: far below 2^-6.
  const Scalar close = Scalar::alpha(kGolden) - S(987, 1597);
  CHECK_THROWS_AS((void)close.sign(), BudgetExhausted);
  set_refinement_policy(saved);
  CHECK(close.sign() == oracle::quadratic_sign(Rational(-987, 1597), 1, kGolden));
}

TEST_CASE("field product and quotient") {
  const Scalar a = Scalar::alpha(kGolden);
  CHECK(a * a == Scalar(1) - a);
  const Scalar r = Scalar::alpha(Irrational::kSqrt2Minus1);
  CHECK(r * r == Scalar(1) - r * Rational(2));
  CHECK(a / a == Scalar(1));
  CHECK((Scalar(1) / a) == Scalar(1) + a);  // 1/alpha = phi = 1 + alpha
  CHECK_THROWS_AS(a / Scalar(0), PreconditionError);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> num(-500, 500);
  std::uniform_int_distribution<std::int64_t> den(1, 64);
  for (Irrational tag : {kGolden, Irrational::kSqrt2Minus1}) {
    const double alpha = tag == kGolden ? (std::sqrt(5.0) - 1) / 2 : std::sqrt(2.0) - 1;
    for (int i = 0; i < 500; ++i) {
      const Scalar x(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), tag);
      const Scalar y(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), tag);
      auto value = [&](const Scalar& s) {
        return s.rational_part().to_double() + s.alpha_part().to_double() * alpha;
      };
      CHECK(value(x * y) == doctest::Approx(value(x) * value(y)).epsilon(1e-9));
      if (!y.is_zero()) {
        CHECK((x / y) * y == x);
        CHECK(value(x / y) == doctest::Approx(value(x) / value(y)).epsilon(1e-9));
      }
    }
  }
}
