#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sumstab/convex.hpp"
#include "sumstab/infconv.hpp"
#include "sumstab/lattice.hpp"
#include "sumstab/polytope.hpp"
#include "sumstab/rational.hpp"
#include "sumstab/sumset.hpp"

namespace sumstab::harness {

/// ({1..n0} x {1..2n}^{k-1}) u {(-1, 1, ..., 1)}.
inline LatticeSet gen_degenerate_family(std::size_t k, Coord n0, Coord n) {
  if (k < 2) throw std::invalid_argument("degenerate family needs k >= 2");
  if (n0 < 1 || n < n0) throw std::invalid_argument("degenerate family needs n >= n0 >= 1");
  std::vector<Coord> flat;
  std::vector<Coord> x(k, 1);
  while (true) {
    flat.insert(flat.end(), x.begin(), x.end());
    std::size_t j = k;
    while (j-- > 0) {
      const Coord hi = j == 0 ? n0 : 2 * n;
      if (x[j] < hi) {
        ++x[j];
        break;
      }
      x[j] = 1;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  std::vector<Coord> apex(k, 1);
  apex[0] = -1;
  flat.insert(flat.end(), apex.begin(), apex.end());
  return LatticeSet::from_flat(k, std::move(flat));
}

struct DegenerateIdentities {
  std::int64_t card = 0;
  std::int64_t deficit = 0;
  std::int64_t co_gap = 0;       // |co(A) \ A|
  Rational predicted_gap;        // (|A| - 1) / (2^{k-1} n0)
  bool deficit_negative = false;
  bool gap_matches = false;
};

inline DegenerateIdentities check_degenerate_family(std::size_t k, Coord n0, Coord n) {
  const LatticeSet a = gen_degenerate_family(k, n0, n);
  DegenerateIdentities r;
  r.card = static_cast<std::int64_t>(a.size());
  r.deficit = doubling_deficit(a).deficit;
  r.co_gap = static_cast<std::int64_t>(lattice_hull(a).size()) - r.card;
  r.predicted_gap = Rational(static_cast<long>(r.card - 1)) /
                    (pow2(static_cast<int>(k) - 1) * Rational(static_cast<long>(n0)));
  r.deficit_negative = r.deficit < 0;
  r.gap_matches = Rational(static_cast<long>(r.co_gap)) == r.predicted_gap;
  return r;
}

/// Integer realization n * (((T x [-2, 0]) u (V(T) x {1})) ∩ (Z/n)^k), with T
/// the standard (k-1)-simplex {x >= 0, sum x <= 1}.
inline LatticeSet gen_lowerbound_family(std::size_t k, Coord n) {
  if (k < 2) throw std::invalid_argument("lower-bound family needs k >= 2");
  if (n < 1) throw std::invalid_argument("lower-bound family needs n >= 1");
  const std::size_t d = k - 1;
  std::vector<Coord> flat;
  std::vector<Coord> x(d, 0);
  while (true) {
    Coord s = 0;
    for (auto c : x) s += c;
    if (s <= n)
      for (Coord h = -2 * n; h <= 0; ++h) {
        flat.insert(flat.end(), x.begin(), x.end());
        flat.push_back(h);
      }
    std::size_t j = 0;
    while (j < d && ++x[j] > n) x[j++] = 0;
    if (j == d) break;
  }
  for (std::size_t v = 0; v <= d; ++v) {
    std::vector<Coord> p(k, 0);
    if (v > 0) p[v - 1] = n;
    p[d] = n;
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return LatticeSet::from_flat(k, std::move(flat));
}

/// Lattice points of n times the standard (k-1)-simplex, valued 0 at the
/// vertices and 1 elsewhere.
inline LatticeFunction gen_functional_example(std::size_t k, Coord n) {
  if (k < 2) throw std::invalid_argument("functional example needs k >= 2");
  if (n < 1) throw std::invalid_argument("functional example needs n >= 1");
  const std::size_t d = k - 1;
  std::vector<std::pair<Point, Rational>> pairs;
  std::vector<Coord> x(d, 0);
  while (true) {
    Coord s = 0;
    std::size_t nonzero = 0;
    for (auto c : x) {
      s += c;
      nonzero += c != 0;
    }
    if (s <= n) {
      const bool vertex = nonzero == 0 || (nonzero == 1 && s == n);
      pairs.emplace_back(Point(x), Rational(vertex ? 0 : 1));
    }
    std::size_t j = 0;
    while (j < d && ++x[j] > n) x[j++] = 0;
    if (j == d) break;
  }
  return LatticeFunction::from_pairs(d, pairs);
}

/// N * (union of regions ∩ (Z/N)^k), as an integer set.
inline LatticeSet discretize(const std::vector<Polytope>& regions, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("discretize needs N >= 1");
  if (regions.empty()) throw std::invalid_argument("discretize needs at least one region");
  const std::size_t k = regions.front().dim();
  LatticeSet out(k);
  for (const auto& r : regions) {
    if (r.dim() != k) throw std::invalid_argument("regions must share a dimension");
    if (r.empty()) continue;
    out = set_union(out, lattice_points(r.scaled(Rational(to_integer(n)))));
  }
  return out;
}

}  // namespace sumstab::harness
