#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "sumstab/convex.hpp"
#include "sumstab/lattice.hpp"
#include "sumstab/rational.hpp"
#include "sumstab/sumset.hpp"

namespace sumstab::harness {

struct StabilityReport {
  std::int64_t card = 0;
  std::int64_t deficit = 0;
  Rational delta;  // deficit / card
  std::int64_t gap = 0;
  std::optional<Rational> ratio;  // gap / deficit, only when deficit > 0
  ThicknessEstimate thickness;
};

/// Measured quantities only; the constants they would be compared against
/// are not explicit.
inline StabilityReport check_stability(const LatticeSet& a, Coord normal_bound = 5) {
  if (a.empty()) throw std::invalid_argument("check_stability of an empty set");
  const auto dd = doubling_deficit(a);
  StabilityReport r;
  r.card = dd.card_a;
  r.deficit = dd.deficit;
  r.delta = dd.normalized_delta;
  r.gap = convex_progression(a).gap;
  if (r.deficit > 0) r.ratio = make_rational(r.gap, r.deficit);
  r.thickness = thickness_upper(a, normal_bound);
  return r;
}

}  // namespace sumstab::harness
