#pragma once

// Random instance generators for the property suites. Every sampler draws
// only from the engine it is handed, so an instance is a pure function of
// its seed.

#include <cstdint>
#include <random>
#include <vector>

#include "sumstab/convex.hpp"
#include "sumstab/gap.hpp"
#include "sumstab/infconv.hpp"
#include "sumstab/lattice.hpp"
#include "sumstab/polytope.hpp"

namespace sumstab::harness {

using Rng = std::mt19937_64;

/// Engine for instance `index` of the suite tagged `tag` under `seed`.
inline Rng instance_rng(std::uint64_t seed, std::uint32_t tag, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), tag,
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

inline Coord uniform(Rng& rng, Coord lo, Coord hi) { return std::uniform_int_distribution<Coord>(lo, hi)(rng); }

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline Gap random_box(Rng& rng, std::size_t k, Coord max_side) {
  std::vector<Coord> sides(k);
  for (auto& s : sides) s = uniform(rng, 1, max_side);
  return Gap::box(sides);
}

inline Point random_point(Rng& rng, const Gap& box) {
  std::vector<Coord> p(box.dim());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = uniform(rng, box.lower(j), box.upper(j));
  return Point(std::move(p));
}

/// Each box point kept independently with probability `density`; never empty.
inline LatticeSet uniform_subset(Rng& rng, const Gap& box, double density) {
  const LatticeSet all = box.enumerate();
  std::vector<Coord> flat;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (coin(rng, density)) flat.insert(flat.end(), all.row(i).begin(), all.row(i).end());
  if (flat.empty()) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<Coord>(all.size()) - 1));
    flat.assign(all.row(i).begin(), all.row(i).end());
  }
  return LatticeSet::from_sorted_flat(box.dim(), std::move(flat));
}

/// Union of 1..max_pieces random sub-boxes.
inline LatticeSet box_union(Rng& rng, const Gap& box, int max_pieces = 3) {
  LatticeSet out(box.dim());
  const int pieces = static_cast<int>(uniform(rng, 1, max_pieces));
  for (int p = 0; p < pieces; ++p) {
    std::vector<Coord> base(box.dim()), sides(box.dim());
    for (std::size_t j = 0; j < box.dim(); ++j) {
      const Coord a = uniform(rng, box.lower(j), box.upper(j));
      const Coord b = uniform(rng, box.lower(j), box.upper(j));
      base[j] = std::min(a, b);
      sides[j] = std::max(a, b) - base[j] + 1;
    }
    out = set_union(out, Gap::box_at(Point(base), sides).enumerate());
  }
  return out;
}

/// Lattice points of the hull of a few random box points, with some random
/// deletions; never empty.
inline LatticeSet near_convex(Rng& rng, const Gap& box, double delete_rate = 0.1) {
  std::vector<Point> pts;
  const int n = static_cast<int>(uniform(rng, 1, static_cast<Coord>(box.dim()) + 3));
  for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, box));
  const LatticeSet co = lattice_hull(LatticeSet(box.dim(), pts));
  std::vector<Coord> flat;
  for (std::size_t i = 0; i < co.size(); ++i)
    if (!coin(rng, delete_rate)) flat.insert(flat.end(), co.row(i).begin(), co.row(i).end());
  if (flat.empty()) flat.assign(co.row(0).begin(), co.row(0).end());
  return LatticeSet::from_sorted_flat(box.dim(), std::move(flat));
}

/// One of the three samplers, chosen uniformly.
inline LatticeSet mixed_subset(Rng& rng, const Gap& box, double density_lo, double density_hi) {
  switch (uniform(rng, 0, 2)) {
    case 0:
      return uniform_subset(rng, box, std::uniform_real_distribution<double>(density_lo, density_hi)(rng));
    case 1:
      return box_union(rng, box);
    default:
      return near_convex(rng, box);
  }
}

/// Nonempty random subset of `a`, each point kept with probability `keep`.
inline LatticeSet random_subset_of(Rng& rng, const LatticeSet& a, double keep) {
  std::vector<Coord> flat;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (coin(rng, keep)) flat.insert(flat.end(), a.row(i).begin(), a.row(i).end());
  if (flat.empty()) flat.assign(a.row(0).begin(), a.row(0).end());
  return LatticeSet::from_sorted_flat(a.dim(), std::move(flat));
}

/// Values p/q with 1 <= q <= max_den and 0 <= p <= q.
inline LatticeFunction random_function(Rng& rng, const LatticeSet& domain, long max_den = 4) {
  std::vector<Rational> vals;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const long q = static_cast<long>(uniform(rng, 1, max_den));
    vals.push_back(make_rational(static_cast<long>(uniform(rng, 0, q)), q));
  }
  return LatticeFunction(domain, std::move(vals));
}

/// A random convex progression: the lattice hull of a few points in the box.
inline LatticeSet random_convex_progression(Rng& rng, const Gap& box) {
  std::vector<Point> pts;
  const int n = static_cast<int>(uniform(rng, 1, static_cast<Coord>(box.dim()) + 2));
  for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, box));
  return lattice_hull(LatticeSet(box.dim(), pts));
}

}  // namespace sumstab::harness
