#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "sumstab/hull.hpp"
#include "sumstab/lattice.hpp"
#include "sumstab/rational.hpp"

namespace sumstab {

/// normal . x <= offset, or < offset when open.
struct Halfspace {
  std::vector<Integer> normal;
  Rational offset;
  bool open = false;

  bool satisfied_by(const RationalPoint& x) const {
    Rational s = 0;
    for (std::size_t j = 0; j < normal.size(); ++j) s += normal[j] * x[j];
    return open ? s < offset : s <= offset;
  }
  bool satisfied_by(std::span<const Coord> x) const {
    Integer s = 0;
    for (std::size_t j = 0; j < normal.size(); ++j) s += normal[j] * to_integer(x[j]);
    return open ? Rational(s) < offset : Rational(s) <= offset;
  }
};

using Simplex = std::vector<RationalPoint>;

/// A bounded convex polytope with exact rational vertices. The halfspace
/// list holds one entry per facet (relative to the affine hull) followed by
/// a pair of opposite halfspaces per affine-hull equation.
class Polytope {
 public:
  Polytope() = default;

  static Polytope hull_of(std::size_t dim, std::vector<RationalPoint> pts);
  static Polytope hull_of(const LatticeSet& a);

  std::size_t dim() const noexcept { return dim_; }
  /// Dimension of the affine hull; -1 for the empty polytope.
  int affine_dim() const noexcept { return affine_dim_; }
  bool empty() const noexcept { return vertices_.empty(); }
  bool full_dimensional() const noexcept { return affine_dim_ == static_cast<int>(dim_); }

  const std::vector<RationalPoint>& vertices() const noexcept { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const noexcept { return halfspaces_; }
  /// Vertex indices of each relative facet, parallel to the first
  /// facet_count() halfspaces.
  const std::vector<std::vector<std::size_t>>& facets() const noexcept { return facets_; }
  std::size_t facet_count() const noexcept { return facets_.size(); }

  /// dim-dimensional volume; 0 for lower-dimensional polytopes.
  const Rational& volume() const noexcept { return volume_; }

  bool contains(const RationalPoint& x) const {
    if (empty()) return false;
    for (const auto& h : halfspaces_)
      if (!h.satisfied_by(x)) return false;
    return true;
  }
  bool contains(std::span<const Coord> x) const {
    if (empty()) return false;
    for (const auto& h : halfspaces_)
      if (!h.satisfied_by(x)) return false;
    return true;
  }

  /// Marks facet halfspace i open (strict).
  void set_open(std::size_t facet, bool open = true) {
    if (facet >= facets_.size()) throw std::out_of_range("set_open: facet index");
    halfspaces_[facet].open = open;
  }

  /// Relative interior: every facet halfspace strict.
  Polytope relative_interior() const {
    Polytope p = *this;
    for (std::size_t i = 0; i < facets_.size(); ++i) p.halfspaces_[i].open = true;
    return p;
  }

  Polytope scaled(const Rational& s) const {
    if (sgn(s) <= 0) throw std::invalid_argument("scale factor must be positive");
    std::vector<RationalPoint> v = vertices_;
    for (auto& p : v)
      for (auto& x : p) x *= s;
    Polytope out = hull_of(dim_, std::move(v));
    copy_open_flags(out);
    return out;
  }

  Polytope translated(const RationalPoint& t) const {
    std::vector<RationalPoint> v = vertices_;
    for (auto& p : v)
      for (std::size_t j = 0; j < dim_; ++j) p[j] += t[j];
    Polytope out = hull_of(dim_, std::move(v));
    copy_open_flags(out);
    return out;
  }

 private:
  void copy_open_flags(Polytope& out) const {
    // Facets are produced in the same order for translates and dilates.
    for (std::size_t i = 0; i < std::min(facets_.size(), out.facets_.size()); ++i)
      out.halfspaces_[i].open = halfspaces_[i].open;
  }

  std::size_t dim_ = 0;
  int affine_dim_ = -1;
  std::vector<RationalPoint> vertices_;
  std::vector<Halfspace> halfspaces_;
  std::vector<std::vector<std::size_t>> facets_;
  Rational volume_ = 0;
};

inline RationalPoint to_rational(std::span<const Coord> p) {
  RationalPoint r;
  r.reserve(p.size());
  for (Coord c : p) r.emplace_back(to_integer(c));
  return r;
}

inline Polytope Polytope::hull_of(std::size_t dim, std::vector<RationalPoint> pts) {
  if (pts.empty()) throw std::invalid_argument("convex hull of an empty set");
  for (const auto& p : pts)
    if (p.size() != dim) throw std::invalid_argument("hull point dimension mismatch");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Integer den = 1;
  for (const auto& p : pts)
    for (const auto& x : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<hull::IVec> ipts;
  ipts.reserve(pts.size());
  for (const auto& p : pts) {
    hull::IVec v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = Rational(p[j] * den).get_num();
    ipts.push_back(std::move(v));
  }

  std::vector<hull::IVec> diffs;
  for (std::size_t i = 1; i < ipts.size(); ++i) {
    hull::IVec d(dim);
    for (std::size_t j = 0; j < dim; ++j) d[j] = ipts[i][j] - ipts[0][j];
    diffs.push_back(std::move(d));
  }
  const auto ech = hull::echelon(diffs, dim);
  const std::size_t r = ech.pivots.size();

  Polytope poly;
  poly.dim_ = dim;
  poly.affine_dim_ = static_cast<int>(r);

  // Affine-hull equations.
  std::vector<Halfspace> equalities;
  for (auto& z : hull::orthogonal_complement(ech, dim)) {
    Rational b = 0;
    for (std::size_t j = 0; j < dim; ++j) b += z[j] * pts[0][j];
    hull::IVec neg(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) neg[j] = -z[j];
    equalities.push_back(Halfspace{z, b, false});
    equalities.push_back(Halfspace{std::move(neg), -b, false});
  }

  if (r == 0) {
    poly.vertices_ = {pts[0]};
    poly.halfspaces_ = std::move(equalities);
    return poly;
  }

  // Project onto pivot coordinates; injective on the affine hull.
  std::vector<std::size_t> cols = ech.pivots;
  std::sort(cols.begin(), cols.end());
  std::vector<hull::IVec> proj;
  proj.reserve(ipts.size());
  for (const auto& v : ipts) {
    hull::IVec q;
    for (auto c : cols) q.push_back(v[c]);
    proj.push_back(std::move(q));
  }
  const auto fh = hull::full_hull(proj);

  std::map<std::size_t, std::size_t> remap;
  for (auto i : fh.vertices) {
    remap[i] = poly.vertices_.size();
    poly.vertices_.push_back(pts[i]);
  }
  for (const auto& f : fh.faces) {
    Halfspace h;
    h.normal.assign(dim, 0);
    for (std::size_t t = 0; t < cols.size(); ++t) h.normal[cols[t]] = f.normal[t];
    h.offset = Rational(f.offset) / Rational(den);
    h.offset.canonicalize();
    poly.halfspaces_.push_back(std::move(h));
    std::vector<std::size_t> fv;
    for (auto v : f.verts) fv.push_back(remap.at(v));
    poly.facets_.push_back(std::move(fv));
  }
  for (auto& e : equalities) poly.halfspaces_.push_back(std::move(e));

  if (r == dim) {
    Integer fact = 1;
    for (std::size_t i = 2; i <= dim; ++i) fact *= static_cast<unsigned long>(i);
    Integer denpow;
    mpz_pow_ui(denpow.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(dim));
    poly.volume_ = Rational(fh.volume_times_factorial) / Rational(fact * denpow);
    poly.volume_.canonicalize();
  }
  return poly;
}

inline Polytope Polytope::hull_of(const LatticeSet& a) {
  if (a.empty()) throw std::invalid_argument("convex hull of an empty set");
  // Only the two ends of each row along axis 0 can be extreme.
  std::vector<RationalPoint> pts;
  if (a.dim() == 1) {
    pts.push_back(to_rational(a.row(0)));
    pts.push_back(to_rational(a.row(a.size() - 1)));
  } else {
    std::map<std::vector<Coord>, std::pair<Coord, Coord>> ends;
    for (std::size_t t = 0; t < a.size(); ++t) {
      auto r = a.row(t);
      std::vector<Coord> key(r.begin() + 1, r.end());
      auto it = ends.find(key);
      if (it == ends.end())
        ends.emplace(std::move(key), std::make_pair(r[0], r[0]));
      else {
        it->second.first = std::min(it->second.first, r[0]);
        it->second.second = std::max(it->second.second, r[0]);
      }
    }
    for (const auto& [key, mm] : ends) {
      for (Coord x0 : {mm.first, mm.second}) {
        RationalPoint p;
        p.emplace_back(to_integer(x0));
        for (Coord c : key) p.emplace_back(to_integer(c));
        pts.push_back(std::move(p));
      }
    }
  }
  return hull_of(a.dim(), std::move(pts));
}

inline Polytope convex_hull(const LatticeSet& a) { return Polytope::hull_of(a); }

/// P ∩ Z^k, scanning lines parallel to the first axis over the bounding box.
inline LatticeSet lattice_points(const Polytope& p) {
  if (p.empty()) throw std::invalid_argument("lattice_points: polytope has no vertices (empty or unbounded)");
  const std::size_t k = p.dim();
  std::vector<Coord> lo(k), hi(k);
  for (std::size_t j = 0; j < k; ++j) {
    Rational mn = p.vertices()[0][j], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    lo[j] = to_int64(ceil_of(mn));
    hi[j] = to_int64(floor_of(mx));
    if (lo[j] > hi[j]) return LatticeSet(k);
  }
  std::vector<Coord> flat;
  std::vector<Coord> x(lo);
  while (true) {
    // Interval of admissible first coordinates on the line through x.
    Integer tmin = to_integer(lo[0]), tmax = to_integer(hi[0]);
    bool feasible = true;
    for (const auto& h : p.halfspaces()) {
      Integer rest = 0;
      for (std::size_t j = 1; j < k; ++j) rest += h.normal[j] * to_integer(x[j]);
      const Integer& a = h.normal[0];
      Rational slack = h.offset - Rational(rest);
      if (sgn(a) == 0) {
        if (h.open ? !(sgn(slack) > 0) : !(sgn(slack) >= 0)) {
          feasible = false;
          break;
        }
        continue;
      }
      Rational q = slack / Rational(a);
      if (sgn(a) > 0) {
        Integer b = floor_of(q);
        if (h.open && q.get_den() == 1) b -= 1;
        tmax = std::min(tmax, b);
      } else {
        Integer b = ceil_of(q);
        if (h.open && q.get_den() == 1) b += 1;
        tmin = std::max(tmin, b);
      }
      if (tmin > tmax) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      for (Integer t = tmin; t <= tmax; ++t) {
        flat.push_back(to_int64(t));
        flat.insert(flat.end(), x.begin() + 1, x.end());
      }
    }
    std::size_t j = k;
    while (j-- > 1) {
      if (x[j] < hi[j]) {
        ++x[j];
        break;
      }
      x[j] = lo[j];
    }
    if (j == 0 || j == static_cast<std::size_t>(-1)) break;
  }
  return LatticeSet::from_flat(k, std::move(flat));
}

/// Triangulates a convex polytope of affine dimension m into m-simplices
/// (fan from the first vertex over the triangulated facets).
inline std::vector<Simplex> triangulate(const Polytope& p) {
  if (p.empty()) return {};
  const int m = p.affine_dim();
  if (m == 0) return {Simplex{p.vertices()[0]}};
  if (m == 1) return {Simplex{p.vertices()[0], p.vertices()[1]}};
  std::vector<Simplex> out;
  const auto& apex = p.vertices()[0];
  for (const auto& f : p.facets()) {
    if (std::find(f.begin(), f.end(), std::size_t{0}) != f.end()) continue;
    std::vector<RationalPoint> fv;
    for (auto v : f) fv.push_back(p.vertices()[v]);
    for (auto& s : triangulate(Polytope::hull_of(p.dim(), std::move(fv)))) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
  return out;
}

/// Exact volume of a full-dimensional simplex given by dim+1 vertices.
inline Rational simplex_volume(const Simplex& s) {
  const std::size_t d = s.size() - 1;
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i][j] = s[i + 1][j] - s[0][j];
  // Rational Gaussian elimination.
  Rational det = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && sgn(m[piv][c]) == 0) ++piv;
    if (piv == d) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < d; ++i) {
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < d; ++j) m[i][j] -= f * m[c][j];
    }
  }
  Integer fact = 1;
  for (std::size_t i = 2; i <= d; ++i) fact *= static_cast<unsigned long>(i);
  Rational v = abs(det) / Rational(fact);
  v.canonicalize();
  return v;
}

}  // namespace sumstab
