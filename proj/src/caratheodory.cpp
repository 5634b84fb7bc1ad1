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

#include "ergo/caratheodory.hpp"

#include <charconv>
#include <numeric>

namespace ergo {

namespace {

IntervalSet as_set(const Interval& iv) { return IntervalSet::interval(iv.lo, iv.hi); }

void require_epsilon(const Scalar& epsilon) {
  if (epsilon.sign() <= 0 || epsilon >= Scalar(1))
    throw PreconditionError("epsilon must lie in (0, 1)");
}

void require_positive(const IntervalSet& s, const char* what) {
  if (s.measure().sign() <= 0) throw PreconditionError(std::string(what) + " has measure zero");
}

IntervalSet pull_checked(const Transformation& t, const IntervalSet& s, std::size_t budget) {
  IntervalSet p = t.preimage(s);
  if (p.component_count() > budget)
    throw BudgetExhausted("pulled set exceeds the component budget of " + std::to_string(budget));
  return p;
}

}  // namespace

MeasureBasis MeasureBasis::dyadic(unsigned depth_max) {
  if (depth_max > 40) throw PreconditionError("dyadic depth above 40");
  MeasureBasis b;
  b.kind_ = Kind::kDyadic;
  b.bound_ = depth_max;
  return b;
}

MeasureBasis MeasureBasis::arcs(unsigned denominator_max) {
  if (denominator_max == 0) throw PreconditionError("arcs need a positive denominator bound");
  MeasureBasis b;
  b.kind_ = Kind::kArcs;
  b.bound_ = denominator_max;
  return b;
}

std::string MeasureBasis::descriptor() const {
  return std::string(kind_ == Kind::kDyadic ? "dyadic:" : "arcs:") + std::to_string(bound_);
}

std::vector<Interval> MeasureBasis::level(unsigned k) const {
  std::vector<Interval> out;
  if (kind_ == Kind::kDyadic) {
    const std::int64_t cells = std::int64_t{1} << k;
    out.reserve(cells);
    for (std::int64_t j = 0; j < cells; ++j)
      out.push_back({Scalar(Rational(j, cells)), Scalar(Rational(j + 1, cells))});
    return out;
  }
  const std::int64_t m = k;
  for (std::int64_t a = 0; a < m; ++a) {
    for (std::int64_t b = a + 1; b <= m; ++b) {
      if (std::gcd(std::gcd(a, b), m) != 1) continue;
      out.push_back({Scalar(Rational(a, m)), Scalar(Rational(b, m))});
    }
  }
  return out;
}

std::vector<Interval> MeasureBasis::elements() const {
  std::vector<Interval> out;
  for (unsigned k = first_level(); k <= bound_; ++k) {
    auto l = level(k);
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

bool MeasureBasis::find_first(const std::function<bool(const Interval&)>& f) const {
  for (unsigned k = first_level(); k <= bound_; ++k)
    for (const auto& iv : level(k))
      if (f(iv)) return true;
  return false;
}

MeasureBasis parse_basis(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("basis must look like dyadic:N or arcs:N");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view num = text.substr(colon + 1);
  unsigned n = 0;
  const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
  if (ec != std::errc() || ptr != num.data() + num.size())
    throw ParseError("bad basis bound '" + std::string(num) + "'");
  if (kind == "dyadic") return MeasureBasis::dyadic(n);
  if (kind == "arcs") return MeasureBasis::arcs(n);
  throw ParseError("unknown basis '" + std::string(kind) + "'");
}

bool is_density_window(const IntervalSet& s, const Interval& j, const Scalar& epsilon) {
  const Scalar inside = set_intersect(s, as_set(j)).measure();
  return inside > (Scalar(1) - epsilon) * j.length();
}

std::optional<Interval> density_search(const IntervalSet& s, const Scalar& epsilon,
                                       const MeasureBasis& basis) {
  require_epsilon(epsilon);
  require_positive(s, "S");
  std::optional<Interval> hit;
  basis.find_first([&](const Interval& j) {
    if (!is_density_window(s, j, epsilon)) return false;
    hit = j;
    return true;
  });
  return hit;
}

DensityPair density_pair(const IntervalSet& a1, const IntervalSet& a2, const Scalar& epsilon,
                         const MeasureBasis& basis) {
  require_epsilon(epsilon);
  require_positive(a1, "A1");
  require_positive(a2, "A2");
  DensityPair result;
  for (unsigned k = basis.first_level(); k <= basis.bound(); ++k) {
    const auto elems = basis.level(k);
    std::vector<const Interval*> dense1, dense2;
    for (const auto& j : elems) {
      if (is_density_window(a1, j, epsilon)) dense1.push_back(&j);
      if (is_density_window(a2, j, epsilon)) dense2.push_back(&j);
    }
    result.level = k;
    result.j1.reset();
    result.j2.reset();
    if (!dense1.empty()) result.j1 = *dense1.front();
    if (!dense2.empty()) result.j2 = *dense2.front();
    for (const Interval* x : dense1) {
      for (const Interval* y : dense2) {
        if (x->length() == y->length()) {
          result.j1 = *x;
          result.j2 = *y;
          return result;
        }
      }
    }
  }
  // Partial results from the deepest level: not a pair.
  if (result.j1 && result.j2 && result.j1->length() != result.j2->length()) result.j2.reset();
  return result;
}

GapReport gap_theta(const IntervalSet& b, const IntervalSet& j) {
  const Scalar mj = j.measure();
  if (mj.sign() <= 0) throw PreconditionError("J has measure zero");
  GapReport r;
  r.j = j;
  r.inside = set_intersect(b, j).measure();
  r.outside = set_intersect(set_complement(b), j).measure();
  r.theta = (r.inside + r.outside) / mj;
  r.caratheodory_equality = r.theta == Scalar(1);
  return r;
}

CorrelationReport correlation_average(const Transformation& t, const IntervalSet& c,
                                      const IntervalSet& d, unsigned m,
                                      std::size_t component_budget) {
  if (m == 0) throw PreconditionError("m must be positive");
  CorrelationReport r;
  r.product = c.measure() * d.measure();
  IntervalSet pulled = c;
  Scalar sum(0);
  r.terms.reserve(m);
  for (unsigned j = 1; j <= m; ++j) {
    pulled = pull_checked(t, pulled, component_budget);
    r.terms.push_back(set_intersect(pulled, d).measure());
    sum = sum + r.terms.back();
  }
  r.average = sum * Rational(1, m);
  return r;
}

std::vector<Scalar> mixing_trace(const Transformation& t, const IntervalSet& c,
                                 const IntervalSet& d, unsigned n_max,
                                 std::size_t component_budget) {
  const auto r = correlation_average(t, c, d, n_max, component_budget);
  std::vector<Scalar> out;
  out.reserve(r.terms.size());
  for (const auto& term : r.terms) out.push_back(term - r.product);
  return out;
}

ReductionReport reduction_check(const Transformation& t, const IntervalSet& b,
                                const MeasureBasis& basis, std::size_t sample,
                                const Scalar& epsilon, unsigned n_max,
                                std::size_t component_budget) {
  ReductionReport r;
  r.invariance = invariance_check(t, b);
  SplinterOptions options;
  options.epsilon = epsilon;
  options.n_max = n_max;
  options.component_budget = component_budget;
  options.stall_window = default_stall_window(t);

  for (unsigned k = basis.first_level(); k <= basis.bound(); ++k) {
    const auto elems = basis.level(k);
    for (const auto& j : elems) {
      for (const auto& kk : elems) {
        if (sample != 0 && r.pairs.size() >= sample) return r;
        if (j == kk || j.length() != kk.length()) continue;
        const auto d = splinter(t, as_set(j), as_set(kk), options);
        const auto transport = transport_check(t, d, b);
        ReductionPair p;
        p.j = j;
        p.k = kk;
        p.status = d.status;
        p.steps = d.steps();
        p.in_j = set_intersect(b, as_set(j)).measure();
        p.in_k = set_intersect(b, as_set(kk)).measure();
        p.residual = d.trace.back().measure_b;
        p.chain_holds = transport.chain_holds();
        p.inequality = p.in_k >= p.in_j - epsilon;
        switch (d.status) {
          case SplinterStatus::kConverged:
            ++r.converged;
            break;
          case SplinterStatus::kStalled:
            ++r.stalled;
            break;
          case SplinterStatus::kBudgetExhausted:
            ++r.exhausted;
            break;
        }
        if (r.invariance.invariant) {
          const bool ok = p.chain_holds && (d.status != SplinterStatus::kConverged || p.inequality);
          r.pass = r.pass && ok;
        }
        r.pairs.push_back(std::move(p));
      }
    }
  }
  return r;
}

}  // namespace ergo
