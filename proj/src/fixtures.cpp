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

#include "ergo/fixtures.hpp"

#include "ergo/errors.hpp"

namespace ergo {

const std::vector<Fixture>& fixture_library() {
  static const std::vector<Fixture> kFixtures = {
      {"doubling_half",
       "name = doubling_half\n"
       "system = doubling\n"
       "command = splinter\n"
       "set.half = 0..1/2\n"
       "J1 = half\n"
       "J2 = half\n"
       "epsilon = 1/1048576\n"
       "n_max = 64\n"
       "orbit_depth = 10\n"
       "expect_status = converged\n"
       "expect_steps = 19\n"},
      {"odometer_cover",
       "name = odometer_cover\n"
       "system = odometer\n"
       "command = splinter\n"
       "set.left = 0..1/2\n"
       "set.right = 1/2..1\n"
       "J1 = left\n"
       "J2 = right\n"
       "epsilon = 1/1000\n"
       "n_max = 8\n"
       "orbit_depth = 1\n"
       "expect_status = converged\n"
       "expect_steps = 1\n"},
      // Mass leaves J1 one block at a time, so the run is long enough for
      // a 64-step orbit check.
      {"odometer_block",
       "name = odometer_block\n"
       "system = odometer\n"
       "command = splinter\n"
       "set.low = 0..1/128\n"
       "set.mid = 1/2..65/128\n"
       "J1 = low\n"
       "J2 = mid\n"
       "epsilon = 1/1000000000000\n"
       "n_max = 200\n"
       "orbit_depth = 64\n"
       "expect_status = converged\n"
       "expect_steps = 127\n"},
      // n_max is the step count at which the discretized oracle first sees
      // mu(B_n) < 1/1000 (identical on Z_F30, Z_F36 and Z_F42).
      {"golden_rotation",
       "name = golden_rotation\n"
       "system = rotation:golden\n"
       "command = splinter\n"
       "set.first = 0..1/4\n"
       "set.second = 1/2..3/4\n"
       "J1 = first\n"
       "J2 = second\n"
       "epsilon = 1/1000\n"
       "n_max = 224\n"
       "orbit_depth = 64\n"
       "expect_status = converged\n"
       "expect_steps = 224\n"},
      {"rotation_third",
       "name = rotation_third\n"
       "system = rotation:1/3\n"
       "command = splinter\n"
       "set.first = 0..1/6\n"
       "set.second = 1/2..2/3\n"
       "set.orbit = 0..1/6,1/3..1/2,2/3..5/6\n"
       "J1 = first\n"
       "J2 = second\n"
       "B = orbit\n"
       "epsilon = 1/1000\n"
       "n_max = 100\n"
       "stall_window = 100\n"
       "orbit_depth = 64\n"
       "expect_status = stalled\n"
       "expect_steps = 100\n"},
      {"kakutani_tower",
       "name = kakutani_tower\n"
       "system = kakutani\n"
       "command = splinter\n"
       "set.floor = 1/4..1/2 | empty\n"
       "set.roof = empty | 0..1/4\n"
       "set.all = 0..1 | tail(one,0,even)\n"
       "J1 = floor\n"
       "J2 = roof\n"
       "B = all\n"
       "epsilon = 1/1000\n"
       "n_max = 64\n"
       "orbit_depth = 2\n"
       "expect_status = converged\n"
       "expect_steps = 2\n"},
      {"doubling_mixing",
       "name = doubling_mixing\n"
       "system = doubling\n"
       "command = mixing\n"
       "set.half = 0..1/2\n"
       "C = half\n"
       "D = half\n"
       "m = 20\n"},
      {"odometer_mixing",
       "name = odometer_mixing\n"
       "system = odometer\n"
       "command = mixing\n"
       "set.half = 0..1/2\n"
       "C = half\n"
       "D = half\n"
       "m = 1024\n"},
      {"gap_half",
       "name = gap_half\n"
       "system = doubling\n"
       "command = gap\n"
       "set.half = 0..1/2\n"
       "B = half\n"
       "basis = dyadic:3\n"},
      {"density_third",
       "name = density_third\n"
       "system = doubling\n"
       "command = density\n"
       "set.third = 0..1/3\n"
       "set.top = 2/3..1\n"
       "S = third\n"
       "A1 = third\n"
       "A2 = top\n"
       "epsilon = 1/8\n"
       "basis = dyadic:4\n"},
      {"reduction_third",
       "name = reduction_third\n"
       "system = rotation:1/3\n"
       "command = reduction\n"
       "set.orbit = 0..1/6,1/3..1/2,2/3..5/6\n"
       "B = orbit\n"
       "basis = dyadic:3\n"
       "epsilon = 1/1000\n"
       "n_max = 200\n"},
      {"verify_golden",
       "name = verify_golden\n"
       "system = rotation:golden\n"
       "command = verify\n"
       "count = 1000\n"
       "seed = 20261017\n"},
      {"verify_doubling",
       "name = verify_doubling\n"
       "system = doubling\n"
       "command = verify\n"
       "count = 1000\n"
       "seed = 20261017\n"},
      {"verify_odometer",
       "name = verify_odometer\n"
       "system = odometer\n"
       "command = verify\n"
       "count = 1000\n"
       "seed = 20261017\n"},
      {"verify_kakutani",
       "name = verify_kakutani\n"
       "system = kakutani\n"
       "command = verify\n"
       "count = 1000\n"
       "seed = 20261017\n"},
  };
  return kFixtures;
}

const Fixture& fixture(std::string_view name) {
  for (const auto& f : fixture_library())
    if (f.name == name) return f;
  throw PreconditionError("unknown fixture '" + std::string(name) + "'");
}

std::vector<TowerSet> tower_battery() {
  const IntervalSet a = IntervalSet::kakutani_floor();
  auto iv = [](std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
    return IntervalSet::interval(Scalar(Rational(p, q)), Scalar(Rational(r, s)));
  };
  return {
      TowerSet::full(),
      {IntervalSet(), a},
      {IntervalSet::tail(Anchor::kZero, 1, Parity::kOdd), a},
      {iv(1, 2, 3, 4), IntervalSet()},
      {iv(0, 1, 1, 2), iv(0, 1, 1, 4)},
      {iv(1, 4, 1, 2), iv(3, 4, 7, 8)},
      {set_union(iv(1, 8, 3, 8), iv(5, 8, 7, 8)), iv(1, 8, 1, 4)},
      {IntervalSet::tail(Anchor::kZero, 2, Parity::kEven), IntervalSet()},
      {iv(1, 2, 1, 1), set_intersect(a, iv(3, 4, 1, 1))},
  };
}

}  // namespace ergo
