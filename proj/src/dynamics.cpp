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

#include "ergo/dynamics.hpp"

#include <algorithm>

#include "ergo/errors.hpp"

namespace ergo {

namespace {

Scalar dyadic(int k) { return Scalar(Rational::pow2(k)); }

// psi(x) = x + shift(n) on I_n, shift(n) = 2^-n + 2^-(n+1) - 1.
Rational odometer_shift(unsigned n) {
  const int k = static_cast<int>(n);
  return Rational::pow2(-k) + Rational::pow2(-k - 1) - Rational(1);
}

const IntervalSet& floor_set() {
  static const IntervalSet a = IntervalSet::kakutani_floor();
  return a;
}

// Splits [lo, hi) at the given increasing breakpoints and hands each piece
// with the index of the cell it falls in.
template <class Emit>
void split_at(const Interval& iv, const std::vector<Scalar>& cuts, Emit emit) {
  // cell k is [cuts[k], cuts[k+1])
  std::size_t k = 0;
  while (k + 1 < cuts.size() && cuts[k + 1] <= iv.lo) ++k;
  Scalar lo = iv.lo;
  while (lo < iv.hi) {
    const Scalar hi = (k + 1 < cuts.size() && cuts[k + 1] < iv.hi) ? cuts[k + 1] : iv.hi;
    emit(k, Interval{lo, hi});
    lo = hi;
    ++k;
  }
}

IntervalSet pattern_only(Anchor anchor, unsigned cut, std::uint8_t pattern) {
  if (pattern == 0) return {};
  ExpandedSet e;
  if (anchor == Anchor::kOne) {
    e.one_cut = cut;
    e.one_pattern = pattern;
  } else {
    e.zero_cut = cut;
    e.zero_pattern = pattern;
  }
  return collapse(e);
}

}  // namespace

IntervalSet rotation_preimage(const Scalar& angle, const IntervalSet& s) {
  return set_translate_mod1(s, -angle);
}

IntervalSet rotation_image(const Scalar& angle, const IntervalSet& s) {
  return set_translate_mod1(s, angle);
}

IntervalSet doubling_preimage(const IntervalSet& s) {
  if (s.has_tails())
    throw UnsupportedRepresentation("doubling map preimage is defined on tail-free sets");
  const Rational half(1, 2);
  std::vector<Interval> out;
  out.reserve(2 * s.intervals().size());
  for (const auto& iv : s.intervals()) out.push_back({iv.lo * half, iv.hi * half});
  for (const auto& iv : s.intervals())
    out.push_back({iv.lo * half + Scalar(half), iv.hi * half + Scalar(half)});
  return IntervalSet::from_sorted_intervals(std::move(out));
}

IntervalSet doubling_image(const IntervalSet& s) {
  if (s.has_tails())
    throw UnsupportedRepresentation("doubling map image is defined on tail-free sets");
  const Scalar half(Rational(1, 2));
  const Scalar one(1);
  const Scalar zero(0);
  std::vector<Interval> out;
  for (const auto& iv : s.intervals()) {
    if (iv.length() >= half) return IntervalSet::full();
    const Scalar lo = iv.lo * Rational(2);
    const Scalar hi = iv.hi * Rational(2);
    if (hi <= one) {
      out.push_back({lo, hi});
    } else if (lo >= one) {
      out.push_back({lo - one, hi - one});
    } else {
      out.push_back({lo, one});
      out.push_back({zero, hi - one});
    }
  }
  return IntervalSet::from_intervals(std::move(out));
}

Scalar odometer_point(const Scalar& x) {
  if (x < Scalar(0) || x >= Scalar(1)) throw PreconditionError("odometer point outside [0, 1)");
  unsigned n = 0;
  while (block_at_one(n).hi <= x) ++n;
  return x + Scalar(odometer_shift(n));
}

IntervalSet odometer_image(const IntervalSet& s) {
  const unsigned zc = required_zero_cut(s);
  const unsigned oc = required_one_cut(s);
  const ExpandedSet e = expand(s, zc, oc);

  std::vector<Interval> pieces;
  // [0, 2^-zc) lies in I_0 and moves by +1/2 next to 1/2.
  if (e.zero_pattern == 3) {
    pieces.push_back({Scalar(Rational(1, 2)), Scalar(Rational(1, 2)) + dyadic(-static_cast<int>(zc))});
  } else if (e.zero_pattern != 0) {
    throw RepresentationOverflow(
        "odometer image would accumulate parity blocks at 1/2; not representable");
  }
  std::vector<Scalar> cuts;
  for (unsigned k = 0; k <= oc; ++k) cuts.push_back(block_at_one(k).lo);
  for (const auto& iv : e.middle) {
    split_at(iv, cuts, [&](std::size_t k, const Interval& piece) {
      const Scalar shift(odometer_shift(static_cast<unsigned>(k)));
      pieces.push_back({piece.lo + shift, piece.hi + shift});
    });
  }
  // Blocks I_n beyond the cut land on D_n: the pattern moves to the zero end.
  return set_union(IntervalSet::from_intervals(std::move(pieces)),
                   pattern_only(Anchor::kZero, oc, e.one_pattern));
}

IntervalSet odometer_preimage(const IntervalSet& s) {
  const unsigned zc = required_zero_cut(s);
  const unsigned oc = required_one_cut(s);
  const ExpandedSet e = expand(s, zc, oc);

  std::vector<Interval> pieces;
  // [1 - 2^-oc, 1) lies in D_0 and pulls back by -1/2 next to 1/2.
  if (e.one_pattern == 3) {
    pieces.push_back({Scalar(Rational(1, 2)) - dyadic(-static_cast<int>(oc)), Scalar(Rational(1, 2))});
  } else if (e.one_pattern != 0) {
    throw RepresentationOverflow(
        "odometer preimage would accumulate parity blocks at 1/2; not representable");
  }
  // cells D_zc-1, ..., D_0 in increasing order
  std::vector<Scalar> cuts;
  for (int k = static_cast<int>(zc); k >= 0; --k) cuts.push_back(dyadic(-k));
  for (const auto& iv : e.middle) {
    split_at(iv, cuts, [&](std::size_t cell, const Interval& piece) {
      const unsigned n = zc - 1 - static_cast<unsigned>(cell);
      const Scalar shift(odometer_shift(n));
      pieces.push_back({piece.lo - shift, piece.hi - shift});
    });
  }
  return set_union(IntervalSet::from_intervals(std::move(pieces)),
                   pattern_only(Anchor::kOne, zc, e.zero_pattern));
}

TowerSet TowerSet::full() { return {IntervalSet::full(), floor_set()}; }

void validate_tower_set(const TowerSet& s) {
  if (!set_subset(s.top, floor_set()))
    throw InvalidTowerSet("tower top " + to_string(s.top) + " is not inside A");
}

Scalar tower_measure(const TowerSet& s) {
  validate_tower_set(s);
  return s.base.measure() + s.top.measure();
}

TowerSet tower_preimage(const TowerSet& s) {
  const IntervalSet pulled = odometer_preimage(s.base);
  return {set_union(set_subtract(pulled, floor_set()), s.top), set_intersect(pulled, floor_set())};
}

TowerSet tower_image(const TowerSet& s) {
  const IntervalSet moved = set_union(odometer_image(set_subtract(s.base, floor_set())),
                                      odometer_image(s.top));
  return {moved, set_intersect(s.base, floor_set())};
}

TowerSet set_union(const TowerSet& s, const TowerSet& t) {
  return {set_union(s.base, t.base), set_union(s.top, t.top)};
}

TowerSet set_intersect(const TowerSet& s, const TowerSet& t) {
  return {set_intersect(s.base, t.base), set_intersect(s.top, t.top)};
}

TowerSet set_subtract(const TowerSet& s, const TowerSet& t) {
  return {set_subtract(s.base, t.base), set_subtract(s.top, t.top)};
}

TowerSet set_symmetric_difference(const TowerSet& s, const TowerSet& t) {
  return {set_symmetric_difference(s.base, t.base), set_symmetric_difference(s.top, t.top)};
}

TowerSet set_complement(const TowerSet& s) { return set_subtract(TowerSet::full(), s); }

bool set_disjoint(const TowerSet& s, const TowerSet& t) {
  return set_disjoint(s.base, t.base) && set_disjoint(s.top, t.top);
}

std::size_t component_count(const TowerSet& s) {
  return s.base.component_count() + s.top.component_count();
}

std::string to_string(const TowerSet& s) { return to_string(s.base) + " | " + to_string(s.top); }

TowerSet parse_tower_set(std::string_view text, std::optional<Irrational> universe) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) return {parse_interval_set(text, universe), {}};
  TowerSet t{parse_interval_set(text.substr(0, bar), universe),
             parse_interval_set(text.substr(bar + 1), universe)};
  try {
    validate_tower_set(t);
  } catch (const InvalidTowerSet& e) {
    throw ParseError(e.what());
  }
  return t;
}

Transformation Transformation::rotation(Scalar angle) {
  Transformation t;
  t.kind_ = SystemKind::kRotation;
  t.angle_ = mod1(angle);
  return t;
}

Transformation Transformation::doubling() { return {}; }

Transformation Transformation::odometer() {
  Transformation t;
  t.kind_ = SystemKind::kOdometer;
  return t;
}

bool Transformation::ergodic() const {
  return kind_ != SystemKind::kRotation || !angle_.is_rational();
}

std::string Transformation::descriptor() const {
  switch (kind_) {
    case SystemKind::kRotation:
      if (angle_.is_rational()) return "rotation:" + angle_.rational_part().to_string();
      if (angle_ == Scalar::alpha(*angle_.tag()))
        return "rotation:" + std::string(irrational_name(*angle_.tag()));
      return "rotation:" + to_exact_string(angle_);
    case SystemKind::kDoubling:
      return "doubling";
    case SystemKind::kOdometer:
      return "odometer";
    case SystemKind::kKakutani:
      return "kakutani";
  }
  return "?";
}

IntervalSet Transformation::preimage(const IntervalSet& s) const {
  switch (kind_) {
    case SystemKind::kRotation:
      return rotation_preimage(angle_, s);
    case SystemKind::kDoubling:
      return doubling_preimage(s);
    case SystemKind::kOdometer:
      return odometer_preimage(s);
    case SystemKind::kKakutani:
      break;
  }
  throw PreconditionError("the Kakutani tower acts on tower sets");
}

IntervalSet Transformation::image(const IntervalSet& s) const {
  switch (kind_) {
    case SystemKind::kRotation:
      return rotation_image(angle_, s);
    case SystemKind::kDoubling:
      return doubling_image(s);
    case SystemKind::kOdometer:
      return odometer_image(s);
    case SystemKind::kKakutani:
      break;
  }
  throw PreconditionError("the Kakutani tower acts on tower sets");
}

Transformation SystemDescriptor::transformation() const {
  switch (kind) {
    case SystemKind::kRotation:
      return Transformation::rotation(angle.value_or(Scalar(0)));
    case SystemKind::kDoubling:
      return Transformation::doubling();
    case SystemKind::kOdometer:
      return Transformation::odometer();
    case SystemKind::kKakutani:
      break;
  }
  throw PreconditionError("kakutani is a tower system, not an interval transformation");
}

std::string SystemDescriptor::to_string() const {
  if (kind == SystemKind::kKakutani) return "kakutani";
  return transformation().descriptor();
}

SystemDescriptor parse_system(std::string_view text) {
  SystemDescriptor d;
  if (text == "doubling") {
    d.kind = SystemKind::kDoubling;
  } else if (text == "odometer") {
    d.kind = SystemKind::kOdometer;
  } else if (text == "kakutani") {
    d.kind = SystemKind::kKakutani;
  } else if (text.starts_with("rotation:")) {
    d.kind = SystemKind::kRotation;
    const std::string_view arg = text.substr(9);
    if (arg == "golden" || arg == "sqrt2m1") {
      d.universe = parse_irrational(arg);
      d.angle = Scalar::alpha(*d.universe);
    } else if (arg.find('.') != std::string_view::npos) {
      throw ParseError("decimal rotation angle '" + std::string(arg) +
                       "' rejected: use a fraction p/q or a built-in irrational");
    } else {
      d.angle = Scalar(Rational::parse(arg));
    }
  } else {
    throw ParseError("unknown system '" + std::string(text) + "'");
  }
  return d;
}

std::vector<Scalar> discontinuity_set(SystemKind kind, unsigned depth) {
  std::vector<Scalar> points;
  if (kind == SystemKind::kOdometer || kind == SystemKind::kKakutani)
    for (unsigned n = 0; n <= depth; ++n) points.push_back(block_at_one(n).lo);
  return points;
}

PreservationReport verify_measure_preserving(const Transformation& t, const IntervalSet& s) {
  PreservationReport r{s.measure(), t.preimage(s).measure()};
  r.pass = r.measure_before == r.measure_preimage;
  return r;
}

PreservationReport verify_measure_preserving(const KakutaniTower& t, const TowerSet& s) {
  PreservationReport r{tower_measure(s), tower_measure(t.preimage(s))};
  r.pass = r.measure_before == r.measure_preimage;
  return r;
}

}  // namespace ergo
