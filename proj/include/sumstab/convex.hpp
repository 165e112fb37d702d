#pragma once

#include <stdexcept>
#include <vector>

#include "sumstab/gap.hpp"
#include "sumstab/lattice.hpp"
#include "sumstab/polytope.hpp"
#include "sumstab/sublattice.hpp"
#include "sumstab/sumset.hpp"

namespace sumstab {

/// co(A), the convex progression co(A) ∩ Λ_A, and |co^(A) \ A|.
struct HullGapReport {
  LatticeSet co;
  LatticeSet co_hat;
  std::int64_t gap = 0;
};

inline LatticeSet lattice_hull(const LatticeSet& a) {
  if (a.empty()) return LatticeSet(a.dim());
  return lattice_points(convex_hull(a));
}

inline HullGapReport convex_progression(const LatticeSet& a) {
  if (a.empty()) throw std::invalid_argument("convex_progression of an empty set");
  HullGapReport r{lattice_hull(a), LatticeSet(a.dim()), 0};
  const auto lat = affine_sublattice(a);
  std::vector<Coord> flat;
  for (std::size_t i = 0; i < r.co.size(); ++i)
    if (lat.contains(r.co.row(i))) flat.insert(flat.end(), r.co.row(i).begin(), r.co.row(i).end());
  r.co_hat = LatticeSet::from_sorted_flat(a.dim(), std::move(flat));
  r.gap = static_cast<std::int64_t>(r.co_hat.size()) - static_cast<std::int64_t>(a.size());
  return r;
}

struct VolumeCountCheck {
  Rational volume;
  std::int64_t count = 0;
  BoundCheck check;  // |volume - count| <= 2k(k+1) min{n_i}^{-1} |B|
};

namespace detail {

inline Rational box_surface_term(const Gap& box) {
  return Rational(box.nominal_size()) / Rational(to_integer(box.min_length()));
}

inline void require_box(const Gap& box, std::size_t dim) {
  if (!box.is_box()) throw std::invalid_argument("expected an axis-aligned box");
  if (box.dim() != dim) throw std::invalid_argument("box dimension mismatch");
}

}  // namespace detail

/// Volume against lattice-point count for a polytope inside the real hull
/// of a box. Open facet flags on P are respected by the count.
inline VolumeCountCheck volume_count_check(const Polytope& p, const Gap& box) {
  detail::require_box(box, p.dim());
  for (const auto& v : p.vertices())
    for (std::size_t j = 0; j < p.dim(); ++j)
      if (v[j] < Rational(to_integer(box.lower(j))) || v[j] > Rational(to_integer(box.upper(j))))
        throw std::invalid_argument("polytope is not contained in the hull of the box");
  VolumeCountCheck r;
  r.volume = p.volume();
  r.count = static_cast<std::int64_t>(lattice_points(p).size());
  const auto k = static_cast<long>(p.dim());
  r.check = check_le(abs(r.volume - Rational(static_cast<long>(r.count))),
                     Rational(2 * k * (k + 1)) * detail::box_surface_term(box));
  return r;
}

struct StraddleCount {
  std::int64_t count = 0;
  BoundCheck check;  // count <= 2(k-1) min{n_i}^{-1} n_1^{-1} |B|
};

/// Number of x with exactly one of x, x+v in co(Y), for Y inside the
/// projection of the k-dimensional box and v in {0,1}^{k-1} \ {0}.
inline StraddleCount boundary_straddle_count(const LatticeSet& y, const Point& v, const Gap& box) {
  if (box.dim() < 2) throw std::invalid_argument("boundary_straddle_count needs a box of dimension >= 2");
  detail::require_box(box, y.dim() + 1);
  if (v.dim() != y.dim()) throw std::invalid_argument("shift dimension mismatch");
  bool nonzero = false;
  for (std::size_t j = 0; j < v.dim(); ++j) {
    if (v[j] != 0 && v[j] != 1) throw std::invalid_argument("shift must lie in {0,1}^{k-1}");
    nonzero = nonzero || v[j] != 0;
  }
  if (!nonzero) throw std::invalid_argument("shift must be nonzero");
  const Gap pbox = box.projected_box();
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!pbox.box_contains(y.row(i))) throw std::invalid_argument("Y is not contained in the projected box");

  StraddleCount r;
  const LatticeSet co = lattice_hull(y);
  std::vector<Coord> buf(y.dim());
  for (std::size_t i = 0; i < co.size(); ++i) {
    auto x = co.row(i);
    for (std::size_t j = 0; j < buf.size(); ++j) buf[j] = x[j] + v[j];
    if (!co.contains(buf)) ++r.count;  // x inside, x+v outside
    for (std::size_t j = 0; j < buf.size(); ++j) buf[j] = x[j] - v[j];
    if (!co.contains(buf)) ++r.count;  // x-v outside, (x-v)+v inside
  }
  const auto k = static_cast<long>(box.dim());
  r.check = check_le(Rational(static_cast<long>(r.count)),
                     Rational(2 * (k - 1)) * detail::box_surface_term(box) / Rational(to_integer(box.lengths()[0])));
  return r;
}

struct HyperplaneBoxCount {
  std::int64_t count = 0;
  BoundCheck check;  // count <= min{n_i}^{-1} |B|
};

/// |{x in B : normal . x = offset}| against min{n_i}^{-1} |B|.
inline HyperplaneBoxCount hyperplane_box_count(const Point& normal, Coord offset, const Gap& box) {
  detail::require_box(box, normal.dim());
  bool nonzero = false;
  for (std::size_t j = 0; j < normal.dim(); ++j) nonzero = nonzero || normal[j] != 0;
  if (!nonzero) throw std::invalid_argument("hyperplane normal must be nonzero");
  HyperplaneBoxCount r;
  // Solve for the last coordinate with a nonzero normal entry.
  std::size_t solve = normal.dim();
  while (normal[--solve] == 0) {
  }
  const std::size_t k = normal.dim();
  std::vector<Coord> x(k);
  for (std::size_t j = 0; j < k; ++j) x[j] = box.lower(j);
  while (true) {
    Coord s = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (j != solve) s += normal[j] * x[j];
    const Coord rem = offset - s;
    if (rem % normal[solve] == 0) {
      const Coord t = rem / normal[solve];
      if (t >= box.lower(solve) && t <= box.upper(solve)) ++r.count;
    }
    std::size_t j = k;
    bool advanced = false;
    while (j-- > 0) {
      if (j == solve) continue;
      if (x[j] < box.upper(j)) {
        ++x[j];
        advanced = true;
        break;
      }
      x[j] = box.lower(j);
    }
    if (!advanced) break;
  }
  r.check = check_le(Rational(static_cast<long>(r.count)), detail::box_surface_term(box));
  return r;
}

/// d_k(A) <= 2^k |co(A) \ A| + 2^{k+2} k (k+1) min{n_i}^{-1} |B| for A in B.
inline BoundCheck check_converse(const LatticeSet& a, const Gap& box) {
  detail::require_box(box, a.dim());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!box.box_contains(a.row(i))) throw std::invalid_argument("set is not contained in the box");
  const auto rep = doubling_deficit(a);
  const auto co = lattice_hull(a);
  const int k = static_cast<int>(a.dim());
  const auto outside = static_cast<long>(co.size() - a.size());
  Rational rhs = pow2(k) * Rational(outside) +
                 pow2(k + 2) * Rational(static_cast<long>(k * (k + 1))) * detail::box_surface_term(box);
  return check_le(Rational(static_cast<long>(rep.deficit)), std::move(rhs));
}

/// Simplicial tiling of the boundary of the hull of A, one fan per facet.
inline std::vector<Simplex> triangulate_boundary(const LatticeSet& a) {
  const Polytope p = convex_hull(a);
  if (!p.full_dimensional()) throw std::invalid_argument("triangulate_boundary needs a full-dimensional hull");
  std::vector<Simplex> out;
  for (const auto& f : p.facets()) {
    std::vector<RationalPoint> fv;
    for (auto v : f) fv.push_back(p.vertices()[v]);
    for (auto& s : triangulate(Polytope::hull_of(p.dim(), std::move(fv)))) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace sumstab
