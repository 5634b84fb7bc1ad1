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

#include "ergo/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>

#include "ergo/errors.hpp"

namespace ergo {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr i128 kMin64 = -static_cast<i128>(std::numeric_limits<std::int64_t>::max());
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

BigInt to_bigint(i128 v) {
  const bool neg = v < 0;
  const u128 m = abs128(v);
  BigInt r = static_cast<std::uint64_t>(m >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(m);
  return neg ? BigInt(-r) : r;
}

bool fits(const BigInt& v) { return v >= BigInt(kMin64) && v <= BigInt(kMax64); }

}  // namespace

Rational::Rational(std::int64_t n) : num_(n) {
  if (n == std::numeric_limits<std::int64_t>::min()) *this = from_wide(n, 1);
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

Rational::Rational(const BigRational& v) {
  const BigInt n = boost::multiprecision::numerator(v);
  const BigInt d = boost::multiprecision::denominator(v);
  if (fits(n) && fits(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  } else {
    big_ = std::make_shared<const BigRational>(v);
  }
}

Rational Rational::from_wide(i128 n, i128 d) {
  if (d == 0) throw PreconditionError("rational: division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const u128 g = gcd128(abs128(n), static_cast<u128>(d));
  if (g > 1) {
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
  }
  Rational r;
  if (n >= kMin64 && n <= kMax64 && d <= kMax64) {
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
  } else {
    r.big_ = std::make_shared<const BigRational>(to_bigint(n), to_bigint(d));
  }
  return r;
}

Rational Rational::pow2(int k) {
  if (k >= 0 && k < 62) return Rational(std::int64_t{1} << k);
  if (k < 0 && k > -62) return Rational(1, std::int64_t{1} << (-k));
  BigInt p = 1;
  p <<= (k < 0 ? -k : k);
  return Rational(k < 0 ? BigRational(BigInt(1), p) : BigRational(p));
}

Rational Rational::parse(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view ns = text.substr(0, slash);
  const std::string_view ds =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_int(ns) || !is_int(ds) || ds.front() == '-' || ds.front() == '+')
    throw ParseError("malformed rational '" + std::string(text) + "'");
  std::string n(ns);
  if (n.front() == '+') n.erase(0, 1);
  const BigInt num(n);
  const BigInt den{std::string(ds)};
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(BigRational(num, den));
}

int Rational::sign() const {
  if (big_) return big_->sign();
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const {
  return big_ ? boost::multiprecision::denominator(*big_) == 1 : den_ == 1;
}

BigInt Rational::numerator() const {
  return big_ ? BigInt(boost::multiprecision::numerator(*big_)) : BigInt(num_);
}

BigInt Rational::denominator() const {
  return big_ ? BigInt(boost::multiprecision::denominator(*big_)) : BigInt(den_);
}

BigRational Rational::to_big() const {
  return big_ ? *big_ : BigRational(BigInt(num_), BigInt(den_));
}

Rational Rational::floor() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return Rational(q);
  }
  const BigInt n = numerator();
  const BigInt d = denominator();
  BigInt q = n / d;
  if (q * d != n && n < 0) --q;
  return Rational(BigRational(q));
}

double Rational::to_double() const {
  return big_ ? big_->convert_to<double>()
              : static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (!big_) {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }
  const BigInt d = denominator();
  return d == 1 ? numerator().str() : numerator().str() + "/" + d.str();
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return Rational::from_wide(static_cast<i128>(a.num_) * b.den_ +
                                   static_cast<i128>(b.num_) * a.den_,
                               static_cast<i128>(a.den_) * b.den_);
  }
  return Rational(a.to_big() + b.to_big());
}

Rational operator-(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return Rational::from_wide(static_cast<i128>(a.num_) * b.den_ -
                                   static_cast<i128>(b.num_) * a.den_,
                               static_cast<i128>(a.den_) * b.den_);
  }
  return Rational(a.to_big() - b.to_big());
}

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return Rational::from_wide(static_cast<i128>(a.num_) * b.num_,
                               static_cast<i128>(a.den_) * b.den_);
  }
  return Rational(a.to_big() * b.to_big());
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw PreconditionError("rational: division by zero");
  if (!a.big_ && !b.big_) {
    return Rational::from_wide(static_cast<i128>(a.num_) * b.den_,
                               static_cast<i128>(a.den_) * b.num_);
  }
  return Rational(a.to_big() / b.to_big());
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return Rational(BigRational(-*big_));
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // demotion invariant: a value has exactly one storage form
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const i128 l = static_cast<i128>(a.num_) * b.den_;
    const i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  const BigRational x = a.to_big();
  const BigRational y = b.to_big();
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace ergo
