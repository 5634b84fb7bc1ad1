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

#include "ergo/interval_set.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "ergo/errors.hpp"

namespace ergo {

namespace {

const Scalar& zero() {
  static const Scalar z(0);
  return z;
}

const Scalar& one() {
  static const Scalar o(1);
  return o;
}

std::uint8_t parity_bit(unsigned n) { return n % 2 == 0 ? 1 : 2; }

unsigned first_with_parity(unsigned from, std::uint8_t bit) {
  const unsigned want = bit == 1 ? 0 : 1;
  return from % 2 == want ? from : from + 1;
}

// Sweep over two canonical interval lists, emitting the canonical list of
// points where keep(in_a, in_b) holds.
template <class Keep>
std::vector<Interval> combine(const std::vector<Interval>& a, const std::vector<Interval>& b,
                              Keep keep) {
  std::vector<Interval> out;
  const std::size_t na = 2 * a.size();
  const std::size_t nb = 2 * b.size();
  auto at = [](const std::vector<Interval>& v, std::size_t k) -> const Scalar& {
    return k % 2 == 0 ? v[k / 2].lo : v[k / 2].hi;
  };
  std::size_t i = 0;
  std::size_t j = 0;
  bool in_a = false;
  bool in_b = false;
  bool in_r = false;
  Scalar start;
  while (i < na || j < nb) {
    const Scalar pt = (j == nb || (i < na && at(a, i) <= at(b, j))) ? at(a, i) : at(b, j);
    while (i < na && at(a, i) == pt) {
      in_a = !in_a;
      ++i;
    }
    while (j < nb && at(b, j) == pt) {
      in_b = !in_b;
      ++j;
    }
    const bool r = keep(in_a, in_b);
    if (r && !in_r) start = pt;
    if (!r && in_r) out.push_back({start, pt});
    in_r = r;
  }
  return out;
}

std::vector<Interval> normalize(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> out;
  out.reserve(v.size());
  for (auto& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (out.back().hi < iv.hi) out.back().hi = std::move(iv.hi);
    } else {
      out.push_back(std::move(iv));
    }
  }
  return out;
}

void check_interval(const Scalar& lo, const Scalar& hi) {
  if (lo < zero() || hi > one() || hi < lo)
    throw PreconditionError("interval [" + to_exact_string(lo) + ", " + to_exact_string(hi) +
                            ") is not a subinterval of [0, 1)");
}

bool contains_interval(const std::vector<Interval>& v, const Interval& block) {
  auto it = std::upper_bound(v.begin(), v.end(), block.lo,
                             [](const Scalar& x, const Interval& iv) { return x < iv.lo; });
  if (it == v.begin()) return false;
  --it;
  return it->lo <= block.lo && block.hi <= it->hi;
}

std::vector<Interval> remove_interval(const std::vector<Interval>& v, const Interval& block) {
  return combine(v, {block}, [](bool x, bool y) { return x && !y; });
}

// Smallest m >= 1 with 2^-m <= gap, for gap > 0.
unsigned cut_for_gap(const Scalar& gap) {
  unsigned m = 1;
  while (Scalar(Rational::pow2(-static_cast<int>(m))) > gap) ++m;
  return m;
}

}  // namespace

struct SetAlgebra {
  static IntervalSet make(std::vector<Interval> canonical) {
    IntervalSet s;
    s.intervals_ = std::move(canonical);
    return s;
  }

  static IntervalSet with_tails(std::vector<Interval> finite, std::optional<ParityTail> z,
                                std::optional<ParityTail> o) {
    IntervalSet s;
    s.intervals_ = std::move(finite);
    s.zero_tail_ = z;
    s.one_tail_ = o;
    return s;
  }

  template <class Keep>
  static IntervalSet apply(const IntervalSet& a, const IntervalSet& b, Keep keep) {
    if (!a.has_tails() && !b.has_tails()) return make(combine(a.intervals_, b.intervals_, keep));
    const unsigned zc = std::max(required_zero_cut(a), required_zero_cut(b));
    const unsigned oc = std::max(required_one_cut(a), required_one_cut(b));
    const ExpandedSet ea = expand(a, zc, oc);
    const ExpandedSet eb = expand(b, zc, oc);
    ExpandedSet r;
    r.zero_cut = zc;
    r.one_cut = oc;
    for (std::uint8_t bit : {std::uint8_t{1}, std::uint8_t{2}}) {
      if (keep((ea.zero_pattern & bit) != 0, (eb.zero_pattern & bit) != 0)) r.zero_pattern |= bit;
      if (keep((ea.one_pattern & bit) != 0, (eb.one_pattern & bit) != 0)) r.one_pattern |= bit;
    }
    r.middle = combine(ea.middle, eb.middle, keep);
    return collapse(r);
  }
};

Interval block_at_one(unsigned n) {
  return {Scalar(Rational(1) - Rational::pow2(-static_cast<int>(n))),
          Scalar(Rational(1) - Rational::pow2(-static_cast<int>(n) - 1))};
}

Interval block_at_zero(unsigned n) {
  return {Scalar(Rational::pow2(-static_cast<int>(n) - 1)),
          Scalar(Rational::pow2(-static_cast<int>(n)))};
}

Rational ParityTail::measure() const {
  return Rational(1, 3) * Rational::pow2(1 - static_cast<int>(start));
}

IntervalSet IntervalSet::full() { return SetAlgebra::make({{zero(), one()}}); }

IntervalSet IntervalSet::interval(const Scalar& lo, const Scalar& hi) {
  check_interval(lo, hi);
  if (lo == hi) return {};
  return SetAlgebra::make({{lo, hi}});
}

IntervalSet IntervalSet::from_intervals(std::vector<Interval> intervals) {
  std::vector<Interval> kept;
  kept.reserve(intervals.size());
  for (auto& iv : intervals) {
    check_interval(iv.lo, iv.hi);
    if (iv.lo != iv.hi) kept.push_back(std::move(iv));
  }
  return SetAlgebra::make(normalize(std::move(kept)));
}

IntervalSet IntervalSet::from_sorted_intervals(std::vector<Interval> intervals) {
  std::vector<Interval> out;
  out.reserve(intervals.size());
  for (auto& iv : intervals) {
    if (iv.lo == iv.hi) continue;
    if (!out.empty() && out.back().hi == iv.lo)
      out.back().hi = std::move(iv.hi);
    else
      out.push_back(std::move(iv));
  }
  return SetAlgebra::make(std::move(out));
}

IntervalSet IntervalSet::tail(Anchor anchor, unsigned start, Parity parity) {
  const unsigned n = first_with_parity(start, parity == Parity::kEven ? 1 : 2);
  ExpandedSet e;
  if (anchor == Anchor::kOne) {
    e.one_cut = std::max(1u, n);
    e.one_pattern = parity_bit(n);
    if (n == 0) {
      // I_0 = [0, 1/2) reaches into the zero end region.
      e.one_cut = 2;
      e.zero_pattern = 3;
      e.zero_cut = 1;
    }
  } else {
    e.zero_cut = std::max(1u, n);
    e.zero_pattern = parity_bit(n);
    if (n == 0) {
      e.zero_cut = 2;
      e.one_pattern = 3;
      e.one_cut = 1;
    }
  }
  return collapse(e);
}

std::vector<ParityTail> IntervalSet::tails() const {
  std::vector<ParityTail> t;
  if (zero_tail_) t.push_back(*zero_tail_);
  if (one_tail_) t.push_back(*one_tail_);
  return t;
}

std::size_t IntervalSet::component_count() const {
  return intervals_.size() + (zero_tail_ ? 1 : 0) + (one_tail_ ? 1 : 0);
}

Scalar IntervalSet::measure() const {
  Scalar total;
  Rational tails(0);
  for (const auto& iv : intervals_) total = total + iv.length();
  if (zero_tail_) tails += zero_tail_->measure();
  if (one_tail_) tails += one_tail_->measure();
  return total + Scalar(tails);
}

unsigned required_zero_cut(const IntervalSet& s) {
  unsigned m = 1;
  if (s.zero_tail()) m = std::max(m, s.zero_tail()->start);
  if (!s.intervals().empty()) {
    const Interval& first = s.intervals().front();
    const Scalar& e = first.lo.is_zero() ? first.hi : first.lo;
    if (e < one()) m = std::max(m, cut_for_gap(e));
    // e == 1 only for [0, 1), which reaches both ends whole.
  }
  return m;
}

unsigned required_one_cut(const IntervalSet& s) {
  unsigned m = 1;
  if (s.one_tail()) m = std::max(m, s.one_tail()->start);
  if (!s.intervals().empty()) {
    const Interval& last = s.intervals().back();
    const Scalar& e = last.hi == one() ? last.lo : last.hi;
    if (e > zero()) m = std::max(m, cut_for_gap(one() - e));
  }
  return m;
}

ExpandedSet expand(const IntervalSet& s, unsigned zero_cut, unsigned one_cut) {
  ExpandedSet e;
  e.zero_cut = zero_cut;
  e.one_cut = one_cut;
  const Scalar z(Rational::pow2(-static_cast<int>(zero_cut)));
  const Scalar o(Rational(1) - Rational::pow2(-static_cast<int>(one_cut)));

  auto add_piece = [&](Scalar lo, Scalar hi) {
    if (lo < z) {
      if (!lo.is_zero() || hi < z) throw std::logic_error("expand: zero cutoff too small");
      e.zero_pattern = 3;
      lo = z;
    }
    if (hi > o) {
      if (hi != one() || lo > o) throw std::logic_error("expand: one cutoff too small");
      e.one_pattern = 3;
      hi = o;
    }
    if (lo < hi) e.middle.push_back({std::move(lo), std::move(hi)});
  };

  for (const auto& iv : s.intervals()) add_piece(iv.lo, iv.hi);
  if (const auto& t = s.one_tail()) {
    if (t->start > one_cut) throw std::logic_error("expand: one cutoff below tail start");
    for (unsigned n = t->start; n < one_cut; n += 2) {
      Interval b = block_at_one(n);
      add_piece(b.lo, b.hi);
    }
    e.one_pattern |= parity_bit(t->start);
  }
  if (const auto& t = s.zero_tail()) {
    if (t->start > zero_cut) throw std::logic_error("expand: zero cutoff below tail start");
    for (unsigned n = t->start; n < zero_cut; n += 2) {
      Interval b = block_at_zero(n);
      add_piece(b.lo, b.hi);
    }
    e.zero_pattern |= parity_bit(t->start);
  }
  e.middle = normalize(std::move(e.middle));
  return e;
}

IntervalSet collapse(const ExpandedSet& e) {
  std::vector<Interval> pieces = e.middle;
  if (e.zero_pattern == 3)
    pieces.push_back({zero(), Scalar(Rational::pow2(-static_cast<int>(e.zero_cut)))});
  if (e.one_pattern == 3)
    pieces.push_back({Scalar(Rational(1) - Rational::pow2(-static_cast<int>(e.one_cut))), one()});
  std::vector<Interval> finite = normalize(std::move(pieces));

  std::optional<ParityTail> one_tail;
  if (e.one_pattern == 1 || e.one_pattern == 2) {
    unsigned n = first_with_parity(e.one_cut, e.one_pattern);
    while (n >= 2 && contains_interval(finite, block_at_one(n - 2))) {
      finite = remove_interval(finite, block_at_one(n - 2));
      n -= 2;
    }
    one_tail = ParityTail{Anchor::kOne, n};
  }
  std::optional<ParityTail> zero_tail;
  if (e.zero_pattern == 1 || e.zero_pattern == 2) {
    unsigned n = first_with_parity(e.zero_cut, e.zero_pattern);
    while (n >= 2 && contains_interval(finite, block_at_zero(n - 2))) {
      finite = remove_interval(finite, block_at_zero(n - 2));
      n -= 2;
    }
    zero_tail = ParityTail{Anchor::kZero, n};
  }
  return SetAlgebra::with_tails(std::move(finite), zero_tail, one_tail);
}

IntervalSet set_union(const IntervalSet& s, const IntervalSet& t) {
  return SetAlgebra::apply(s, t, [](bool x, bool y) { return x || y; });
}

IntervalSet set_intersect(const IntervalSet& s, const IntervalSet& t) {
  return SetAlgebra::apply(s, t, [](bool x, bool y) { return x && y; });
}

IntervalSet set_subtract(const IntervalSet& s, const IntervalSet& t) {
  return SetAlgebra::apply(s, t, [](bool x, bool y) { return x && !y; });
}

IntervalSet set_symmetric_difference(const IntervalSet& s, const IntervalSet& t) {
  return SetAlgebra::apply(s, t, [](bool x, bool y) { return x != y; });
}

IntervalSet set_complement(const IntervalSet& s) { return set_subtract(IntervalSet::full(), s); }

bool set_subset(const IntervalSet& s, const IntervalSet& t) { return set_subtract(s, t).empty(); }

bool set_disjoint(const IntervalSet& s, const IntervalSet& t) {
  return set_intersect(s, t).empty();
}

IntervalSet set_translate_mod1(const IntervalSet& s, const Scalar& t) {
  if (s.has_tails())
    throw UnsupportedRepresentation("translation mod 1 is not defined for sets with tails");
  if (t.is_zero()) return s;
  std::vector<Interval> out;
  out.reserve(s.intervals().size() + 1);
  for (const auto& iv : s.intervals()) {
    const Scalar lo = mod1(iv.lo + t);
    const Scalar hi = lo + iv.length();
    if (hi <= one()) {
      out.push_back({lo, hi});
    } else {
      out.push_back({lo, one()});
      out.push_back({zero(), hi - one()});
    }
  }
  return IntervalSet::from_intervals(std::move(out));
}

TruncatedSet truncate_tails(const IntervalSet& s, unsigned blocks) {
  std::vector<Interval> pieces = s.intervals();
  Rational dropped(0);
  for (const auto& t : s.tails()) {
    const unsigned stop = t.start + 2 * blocks;
    for (unsigned n = t.start; n < stop; n += 2)
      pieces.push_back(t.anchor == Anchor::kOne ? block_at_one(n) : block_at_zero(n));
    dropped += ParityTail{t.anchor, stop}.measure();
  }
  return {IntervalSet::from_intervals(std::move(pieces)), dropped};
}

std::string to_string(const IntervalSet& s) {
  if (s.empty()) return "empty";
  std::string out;
  auto sep = [&] {
    if (!out.empty()) out += ',';
  };
  for (const auto& iv : s.intervals()) {
    sep();
    out += to_exact_string(iv.lo) + ".." + to_exact_string(iv.hi);
  }
  for (const auto& t : s.tails()) {
    sep();
    out += std::string("tail(") + (t.anchor == Anchor::kOne ? "one" : "zero") + "," +
           std::to_string(t.start) + "," + (t.parity() == Parity::kEven ? "even" : "odd") + ")";
  }
  return out;
}

IntervalSet parse_interval_set(std::string_view text, std::optional<Irrational> universe) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
    return v;
  };
  text = trim(text);
  if (text == "empty") return {};
  if (text == "full") return IntervalSet::full();

  std::vector<std::string_view> tokens;
  int depth = 0;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      tokens.push_back(trim(text.substr(begin, i - begin)));
      begin = i + 1;
    } else if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      --depth;
    }
  }

  std::vector<Interval> finite;
  IntervalSet result;
  for (std::string_view tok : tokens) {
    if (tok.starts_with("tail(")) {
      if (!tok.ends_with(")")) throw ParseError("unterminated tail '" + std::string(tok) + "'");
      std::string_view body = tok.substr(5, tok.size() - 6);
      std::vector<std::string_view> f;
      std::size_t b = 0;
      for (std::size_t i = 0; i <= body.size(); ++i) {
        if (i == body.size() || body[i] == ',') {
          f.push_back(trim(body.substr(b, i - b)));
          b = i + 1;
        }
      }
      if (f.size() != 3) throw ParseError("tail needs (anchor, start, parity): '" + std::string(tok) + "'");
      Anchor anchor;
      if (f[0] == "one")
        anchor = Anchor::kOne;
      else if (f[0] == "zero")
        anchor = Anchor::kZero;
      else
        throw ParseError("tail anchor must be one or zero: '" + std::string(f[0]) + "'");
      unsigned start = 0;
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(std::string(f[1]), &used);
        if (used != f[1].size() || v > 4096) throw ParseError("");
        start = static_cast<unsigned>(v);
      } catch (const std::exception&) {
        throw ParseError("bad tail start '" + std::string(f[1]) + "'");
      }
      Parity parity;
      if (f[2] == "even")
        parity = Parity::kEven;
      else if (f[2] == "odd")
        parity = Parity::kOdd;
      else
        throw ParseError("tail parity must be even or odd: '" + std::string(f[2]) + "'");
      result = set_union(result, IntervalSet::tail(anchor, start, parity));
      continue;
    }
    const auto dots = tok.find("..");
    if (dots == std::string_view::npos)
      throw ParseError("expected 'lo..hi' or tail(...), got '" + std::string(tok) + "'");
    Scalar lo = parse_scalar(tok.substr(0, dots), universe);
    Scalar hi = parse_scalar(tok.substr(dots + 2), universe);
    if (!(lo < hi)) throw ParseError("empty or reversed interval '" + std::string(tok) + "'");
    try {
      check_interval(lo, hi);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
    finite.push_back({std::move(lo), std::move(hi)});
  }
  return set_union(result, IntervalSet::from_intervals(std::move(finite)));
}

std::ostream& operator<<(std::ostream& os, const IntervalSet& s) { return os << to_string(s); }

}  // namespace ergo
