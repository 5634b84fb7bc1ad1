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

#include "ergo/splinter.hpp"

namespace ergo {

std::string to_string(SplinterStatus status) {
  switch (status) {
    case SplinterStatus::kConverged:
      return "converged";
    case SplinterStatus::kStalled:
      return "stalled";
    case SplinterStatus::kBudgetExhausted:
      return "budget_exhausted";
  }
  return "unknown";
}

unsigned default_stall_window(const Transformation& t) {
  constexpr unsigned kMinimum = 8;
  if (t.kind() != SystemKind::kRotation || !t.angle().is_rational()) return kMinimum;
  const BigInt q = t.angle().rational_part().denominator();
  if (q > BigInt(1u << 20)) return 1u << 20;
  return std::max(kMinimum, q.convert_to<unsigned>());
}

}  // namespace ergo
