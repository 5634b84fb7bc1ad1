#include "doctest.h"
#include "ergo/dynamics.hpp"
#include "ergo/errors.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace ergo;

namespace {

const Irrational kGolden = Irrational::kGoldenConjugate;

Scalar S(std::int64_t n, std::int64_t d) { return Scalar(Rational(n, d)); }
IntervalSet I(std::int64_t a, std::int64_t da, std::int64_t b, std::int64_t db) {
  return IntervalSet::interval(S(a, da), S(b, db));
}
const IntervalSet kA = IntervalSet::kakutani_floor();

// Sample point: dyadic most of the time, otherwise a rational with odd
// denominator so no sample sits on a block boundary by construction.
Scalar sample(gen::SetGenerator& g) {
  if (g.coin(0.7)) {
    const Rational r = g.dyadic(16);
    if (r < Rational(1) && !r.is_zero()) return Scalar(r);
  }
  std::uniform_int_distribution<std::int64_t> num(1, 999);
  return Scalar(Rational(2 * num(g.rng()) - 1, 1999));
}

}  // namespace

TEST_CASE("rotation examples") {
  CHECK(rotation_preimage(S(1, 3), I(0, 1, 1, 6)) == I(2, 3, 5, 6));
  const Scalar alpha = Scalar::alpha(kGolden);
  const IntervalSet r = rotation_preimage(alpha, I(0, 1, 1, 4));
  CHECK(r == IntervalSet::interval(Scalar(1) - alpha, S(5, 4) - alpha));
  CHECK(rotation_preimage(alpha, IntervalSet::full()) == IntervalSet::full());
  CHECK_THROWS_AS(rotation_preimage(alpha, kA), UnsupportedRepresentation);
  CHECK(Transformation::rotation(alpha).ergodic());
  CHECK_FALSE(Transformation::rotation(S(1, 3)).ergodic());
  CHECK(Transformation::rotation(S(4, 3)).angle() == S(1, 3));
}

TEST_CASE("doubling examples") {
  CHECK(doubling_preimage(I(0, 1, 1, 2)) == set_union(I(0, 1, 1, 4), I(1, 2, 3, 4)));
  CHECK(doubling_preimage(I(1, 2, 3, 4)) == set_union(I(1, 4, 3, 8), I(3, 4, 7, 8)));
  CHECK(doubling_preimage(IntervalSet::full()) == IntervalSet::full());
  CHECK(doubling_image(I(0, 1, 1, 4)) == I(0, 1, 1, 2));
  CHECK(doubling_image(I(1, 4, 3, 4)) == IntervalSet::full());
  CHECK(doubling_image(I(3, 8, 1, 2)) == I(3, 4, 1, 1));
  CHECK_FALSE(Transformation::doubling().invertible());
}

TEST_CASE("odometer examples") {
  CHECK(odometer_image(I(0, 1, 1, 2)) == I(1, 2, 1, 1));
  CHECK(odometer_image(I(1, 2, 3, 4)) == I(1, 4, 1, 2));
  CHECK(odometer_preimage(I(0, 1, 1, 2)) == I(1, 2, 1, 1));
  CHECK(odometer_image(kA) == IntervalSet::tail(Anchor::kZero, 0, Parity::kEven));
  CHECK(odometer_preimage(IntervalSet::tail(Anchor::kZero, 0, Parity::kEven)) == kA);
  // psi of the blocks from N on fills [0, 2^-N).
  CHECK(odometer_image(I(7, 8, 1, 1)) == I(0, 1, 1, 8));
  CHECK(odometer_point(S(1, 4)) == S(3, 4));
  CHECK(odometer_point(S(5, 8)) == S(3, 8));
}

TEST_CASE("odometer overflow is reported") {
  // The odd blocks near 1 pull back to blocks that would pile up at 1/2.
  CHECK_THROWS_AS(odometer_preimage(IntervalSet::tail(Anchor::kOne, 1, Parity::kOdd)),
                  RepresentationOverflow);
  CHECK_THROWS_AS(odometer_image(IntervalSet::tail(Anchor::kZero, 1, Parity::kOdd)),
                  RepresentationOverflow);
}

TEST_CASE("tower examples") {
  const TowerSet top_floor{IntervalSet(), kA};
  CHECK(tower_preimage(top_floor) == TowerSet{kA, IntervalSet()});
  CHECK(tower_preimage(TowerSet::full()) == TowerSet::full());
  CHECK(tower_image(TowerSet::full()) == TowerSet::full());
  CHECK(tower_measure(TowerSet::full()) == S(5, 3));
  CHECK(tower_measure(TowerSet{I(0, 1, 1, 2), IntervalSet()}) == S(1, 2));
  CHECK(tower_measure(TowerSet{IntervalSet(), I(3, 4, 7, 8)}) == S(1, 8));
  CHECK_THROWS_AS(tower_measure(TowerSet{IntervalSet(), I(1, 2, 3, 4)}), InvalidTowerSet);

  // psi^-1 [1/2, 3/4) = [0, 1/4), all of it in I_0 and hence in A.
  const TowerSet pre = tower_preimage(TowerSet{I(1, 2, 3, 4), IntervalSet()});
  CHECK(pre.base.empty());
  CHECK(pre.top == I(0, 1, 1, 4));
  CHECK(tower_measure(pre) == S(1, 4));
}

TEST_CASE("discontinuity listings") {
  const auto d = discontinuity_set(SystemKind::kOdometer, 3);
  CHECK(d == std::vector<Scalar>{S(0, 1), S(1, 2), S(3, 4), S(7, 8)});
  CHECK(discontinuity_set(SystemKind::kOdometer, 4).back() == S(15, 16));
  CHECK(discontinuity_set(SystemKind::kRotation, 5).empty());
  CHECK(discontinuity_set(SystemKind::kDoubling, 5).empty());
}

TEST_CASE("measure preservation reports") {
  auto r = verify_measure_preserving(Transformation::doubling(), I(0, 1, 1, 2));
  CHECK(r.pass);
  CHECK(r.measure_preimage == S(1, 2));
  r = verify_measure_preserving(Transformation::odometer(), I(1, 2, 1, 1));
  CHECK(r.pass);
  r = verify_measure_preserving(KakutaniTower{}, TowerSet::full());
  CHECK(r.pass);
  CHECK(r.measure_before == S(5, 3));
}

TEST_CASE("system descriptors") {
  CHECK(parse_system("rotation:golden").to_string() == "rotation:golden");
  CHECK(parse_system("rotation:1/3").transformation().angle() == S(1, 3));
  CHECK(parse_system("kakutani").kind == SystemKind::kKakutani);
  CHECK(parse_system("rotation:sqrt2m1").universe == Irrational::kSqrt2Minus1);
  CHECK_THROWS_AS(parse_system("rotation:0.618"), ParseError);
  CHECK_THROWS_AS(parse_system("tent"), ParseError);
  CHECK(to_string(parse_tower_set("0..1/2 | 3/4..7/8", std::nullopt)) == "0..1/2 | 3/4..7/8");
}

TEST_CASE("preimages agree with the pointwise maps") {
  gen::SetGenerator g(404);
  gen::SetShape shape;
  shape.depth = 10;
  const Scalar alpha = Scalar::alpha(kGolden);
  for (int i = 0; i < 60; ++i) {
    const IntervalSet s = g.finite(shape);
    IntervalSet zs = s;
    if (g.coin(0.5)) zs = set_union(zs, g.tail(Anchor::kZero));
    const IntervalSet rot = rotation_preimage(alpha, s);
    const IntervalSet dbl = doubling_preimage(s);
    const IntervalSet odo = odometer_preimage(zs);
    for (int k = 0; k < 100; ++k) {
      const Scalar x = sample(g);
      CHECK(oracle::contains(rot, x) == oracle::contains(s, mod1(x + alpha)));
      CHECK(oracle::contains(dbl, x) == oracle::contains(s, mod1(x * Rational(2))));
      CHECK(oracle::contains(odo, x) == oracle::contains(zs, oracle::psi(x)));
    }
  }
}

TEST_CASE("tower preimage agrees with the pointwise tower map") {
  gen::SetGenerator g(9001);
  gen::SetShape shape;
  shape.depth = 10;
  shape.one_tails = true;
  std::size_t samples = 0;
  for (int i = 0; i < 20; ++i) {
    const TowerSet s = g.tower(shape);
    const TowerSet pre = tower_preimage(s);
    CHECK(set_is_empty(set_intersect(pre.top, set_complement(kA))));
    for (int k = 0; k < 5000; ++k, ++samples) {
      const Scalar x = sample(g);
      // base point x: to the top floor over x if x in A, else to psi(x).
      const bool base_maps_in = oracle::in_floor(x) ? oracle::contains(s.top, x)
                                                    : oracle::contains(s.base, oracle::psi(x));
      CHECK(oracle::contains(pre.base, x) == base_maps_in);
      if (oracle::in_floor(x))
        CHECK(oracle::contains(pre.top, x) == oracle::contains(s.base, oracle::psi(x)));
    }
  }
  CHECK(samples == 100000);
}

TEST_CASE("image and preimage invert each other") {
  gen::SetGenerator g(31337);
  gen::SetShape shape;
  shape.alpha = kGolden;
  gen::SetShape dyadic_shape;
  const Scalar alpha = Scalar::alpha(kGolden);
  const auto odo = Transformation::odometer();
  for (int i = 0; i < 200; ++i) {
    const IntervalSet s = g.finite(shape);
    CHECK(rotation_image(alpha, rotation_preimage(alpha, s)) == s);
    CHECK(rotation_preimage(alpha, rotation_image(alpha, s)) == s);

    const IntervalSet d = g.finite(dyadic_shape);
    CHECK(doubling_image(doubling_preimage(d)) == d);
    CHECK(set_subset(d, doubling_preimage(doubling_image(d))));
    CHECK(verify_measure_preserving(Transformation::doubling(), d).pass);

    IntervalSet z = set_union(d, g.tail(Anchor::kZero));
    CHECK(odometer_image(odometer_preimage(z)) == z);
    CHECK(verify_measure_preserving(odo, z).pass);
    IntervalSet o = set_union(d, g.tail(Anchor::kOne));
    CHECK(odometer_preimage(odometer_image(o)) == o);

    const TowerSet t = g.tower(dyadic_shape);
    CHECK(tower_image(tower_preimage(t)) == t);
    CHECK(verify_measure_preserving(KakutaniTower{}, t).pass);
    // Full space stays fixed.
    CHECK(tower_preimage(set_union(t, set_complement(t))) == TowerSet::full());
  }
}
