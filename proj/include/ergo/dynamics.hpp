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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/interval_set.hpp"

namespace ergo {

// The circle with normalized arc length is modelled as [0, 1): rotation by
// alpha is x -> x + alpha mod 1 and z -> z^2 is x -> 2x mod 1. Every image
// and preimage is computed modulo null sets.

enum class SystemKind : std::uint8_t { kRotation, kDoubling, kOdometer, kKakutani };

/// x -> x + angle mod 1.
IntervalSet rotation_preimage(const Scalar& angle, const IntervalSet& s);
IntervalSet rotation_image(const Scalar& angle, const IntervalSet& s);
/// {x : 2x mod 1 in s} = s/2 u (s/2 + 1/2).
IntervalSet doubling_preimage(const IntervalSet& s);
/// 2s mod 1.
IntervalSet doubling_image(const IntervalSet& s);

/// The adding machine psi: translates I_n = [1 - 2^-n, 1 - 2^-(n+1)) onto
/// D_n = [2^-(n+1), 2^-n). Throws RepresentationOverflow when a parity
/// tail would have to be moved next to 1/2.
IntervalSet odometer_image(const IntervalSet& s);
IntervalSet odometer_preimage(const IntervalSet& s);

/// Exact value of psi at a point of [0, 1).
Scalar odometer_point(const Scalar& x);

/**
 * Measurable subset of the one-floor tower X u A'. The floor A' is stored
 * through tau^-1, so `top` is a subset of A = I_0 u I_2 u ... in [0, 1).
 */
struct TowerSet {
  IntervalSet base;
  IntervalSet top;

  static TowerSet full();
  friend bool operator==(const TowerSet&, const TowerSet&) = default;
};

/// Throws InvalidTowerSet unless top is inside A.
void validate_tower_set(const TowerSet& s);
/// mu~(S) = mu(base) + mu(top).
Scalar tower_measure(const TowerSet& s);
/// Preimage under the tower map psi~ (tau on A, psi on X \ A, psi o tau^-1 on A').
TowerSet tower_preimage(const TowerSet& s);
/// Image under psi~.
TowerSet tower_image(const TowerSet& s);

TowerSet set_union(const TowerSet& s, const TowerSet& t);
TowerSet set_intersect(const TowerSet& s, const TowerSet& t);
TowerSet set_subtract(const TowerSet& s, const TowerSet& t);
TowerSet set_symmetric_difference(const TowerSet& s, const TowerSet& t);
TowerSet set_complement(const TowerSet& s);
inline bool set_equals(const TowerSet& s, const TowerSet& t) { return s == t; }
inline bool set_is_empty(const TowerSet& s) { return s.base.empty() && s.top.empty(); }
inline Scalar set_measure(const TowerSet& s) { return tower_measure(s); }
bool set_disjoint(const TowerSet& s, const TowerSet& t);
std::size_t component_count(const TowerSet& s);
inline std::size_t component_count(const IntervalSet& s) { return s.component_count(); }

/// "base | top" using the interval-set text for each part.
std::string to_string(const TowerSet& s);
/// Accepts "base | top"; a bare interval set is a base with an empty top.
TowerSet parse_tower_set(std::string_view text, std::optional<Irrational> universe);

/**
 * One of the shipped interval-space systems. Ergodicity is declared
 * metadata, not something this type proves.
 */
class Transformation {
 public:
  static Transformation rotation(Scalar angle);
  static Transformation doubling();
  static Transformation odometer();

  using set_type = IntervalSet;

  [[nodiscard]] SystemKind kind() const { return kind_; }
  [[nodiscard]] const Scalar& angle() const { return angle_; }
  /// Declared ergodicity: true except for rational rotations.
  [[nodiscard]] bool ergodic() const;
  /// Whether the map is invertible mod null sets.
  [[nodiscard]] bool invertible() const { return kind_ != SystemKind::kDoubling; }
  /// Descriptor text: "rotation:golden", "rotation:1/3", "doubling", "odometer".
  [[nodiscard]] std::string descriptor() const;

  [[nodiscard]] IntervalSet preimage(const IntervalSet& s) const;
  [[nodiscard]] IntervalSet image(const IntervalSet& s) const;

 private:
  SystemKind kind_ = SystemKind::kDoubling;
  Scalar angle_;
};

/// The one-floor Kakutani tower psi~ acting on TowerSet.
class KakutaniTower {
 public:
  using set_type = TowerSet;

  [[nodiscard]] static bool ergodic() { return true; }
  [[nodiscard]] static bool invertible() { return true; }
  [[nodiscard]] static std::string descriptor() { return "kakutani"; }
  [[nodiscard]] TowerSet preimage(const TowerSet& s) const { return tower_preimage(s); }
  [[nodiscard]] TowerSet image(const TowerSet& s) const { return tower_image(s); }
};

/// Either system family, as named by a descriptor string.
struct SystemDescriptor {
  SystemKind kind = SystemKind::kDoubling;
  std::optional<Scalar> angle;          // rotations only
  std::optional<Irrational> universe;   // irrational used by set texts

  [[nodiscard]] Transformation transformation() const;  // not for kKakutani
  [[nodiscard]] std::string to_string() const;
};

/// Parses "rotation:golden", "rotation:sqrt2m1", "rotation:p/q", "doubling",
/// "odometer", "kakutani". Decimal angles are rejected.
SystemDescriptor parse_system(std::string_view text);

/// Breakpoints of the map on [0, 1) as a circle map, up to `depth` for the
/// odometer: {1 - 2^-n : 0 <= n <= depth}. Rotation and doubling are
/// continuous on the circle and return an empty list.
std::vector<Scalar> discontinuity_set(SystemKind kind, unsigned depth);

/// Result of checking mu(T^-1 S) = mu(S) exactly.
struct PreservationReport {
  Scalar measure_before;
  Scalar measure_preimage;
  bool pass = false;
};

PreservationReport verify_measure_preserving(const Transformation& t, const IntervalSet& s);
PreservationReport verify_measure_preserving(const KakutaniTower& t, const TowerSet& s);

}  // namespace ergo
