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

// Seeded generators for property tests: dyadic endpoints with denominator
// at most 2^20, optionally offset by multiples of alpha, optionally with
// parity tails.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ergo/dynamics.hpp"
#include "ergo/interval_set.hpp"

namespace ergo::gen {

struct SetShape {
  int max_intervals = 6;
  int depth = 20;                       // denominators up to 2^depth
  std::optional<Irrational> alpha;      // offset some endpoints by +-alpha/8
  bool zero_tails = false;
  bool one_tails = false;
};

class SetGenerator {
 public:
  explicit SetGenerator(std::uint64_t seed) : rng_(seed) {}

  Rational dyadic(int depth) {
    const int d = std::uniform_int_distribution<int>(0, depth)(rng_);
    const std::int64_t k =
        std::uniform_int_distribution<std::int64_t>(0, std::int64_t{1} << d)(rng_);
    return Rational(k, std::int64_t{1} << d);
  }

  Scalar endpoint(const SetShape& shape) {
    Rational r = dyadic(shape.depth);
    if (shape.alpha && coin(0.3)) {
      // Shift by alpha/8 - 1/16 (|shift| < 1/16), clamped into [0, 1] later.
      const Scalar s = Scalar(r) + Scalar(Rational(-1, 16), Rational(1, 8), *shape.alpha);
      if (s >= Scalar(0) && s <= Scalar(1)) return s;
    }
    return Scalar(r);
  }

  IntervalSet finite(const SetShape& shape) {
    const int n = std::uniform_int_distribution<int>(0, shape.max_intervals)(rng_);
    std::vector<Interval> pieces;
    for (int i = 0; i < n; ++i) {
      Scalar a = endpoint(shape);
      Scalar b = endpoint(shape);
      if (b < a) std::swap(a, b);
      if (a != b) pieces.push_back({a, b});
    }
    return IntervalSet::from_intervals(std::move(pieces));
  }

  IntervalSet any(const SetShape& shape) {
    IntervalSet s = finite(shape);
    if (shape.zero_tails && coin(0.5)) s = set_union(s, tail(Anchor::kZero));
    if (shape.one_tails && coin(0.5)) s = set_union(s, tail(Anchor::kOne));
    if (shape.zero_tails && shape.one_tails && coin(0.2))
      s = set_subtract(s, tail(coin(0.5) ? Anchor::kZero : Anchor::kOne));
    return s;
  }

  IntervalSet tail(Anchor anchor) {
    const unsigned start = std::uniform_int_distribution<unsigned>(0, 12)(rng_);
    return IntervalSet::tail(anchor, start, coin(0.5) ? Parity::kEven : Parity::kOdd);
  }

  TowerSet tower(const SetShape& shape) {
    return {finite(shape), set_intersect(any(shape), IntervalSet::kakutani_floor())};
  }

  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ergo::gen
