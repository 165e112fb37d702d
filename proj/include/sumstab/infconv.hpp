#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sumstab/convex.hpp"
#include "sumstab/hull.hpp"
#include "sumstab/lattice.hpp"
#include "sumstab/polytope.hpp"
#include "sumstab/rational.hpp"
#include "sumstab/sublattice.hpp"
#include "sumstab/sumset.hpp"

namespace sumstab {

/// A nonnegative rational function on a finite lattice set. values[i] is the
/// value at domain.row(i).
class LatticeFunction {
 public:
  LatticeFunction(LatticeSet domain, std::vector<Rational> values)
      : domain_(std::move(domain)), values_(std::move(values)) {
    if (values_.size() != domain_.size()) throw std::invalid_argument("one value per domain point required");
    for (auto& v : values_) {
      v.canonicalize();
      if (sgn(v) < 0) throw std::invalid_argument("function values must be nonnegative");
    }
  }

  /// Builds from (point, value) pairs in any order.
  static LatticeFunction from_pairs(std::size_t dim, const std::vector<std::pair<Point, Rational>>& pairs) {
    std::vector<Point> pts;
    for (const auto& pv : pairs) pts.push_back(pv.first);
    LatticeSet dom(dim, pts);
    if (dom.size() != pairs.size()) throw std::invalid_argument("duplicate point in function definition");
    std::vector<Rational> vals(dom.size());
    for (const auto& [p, v] : pairs) vals[dom_index(dom, p.coords())] = v;
    return LatticeFunction(std::move(dom), std::move(vals));
  }

  const LatticeSet& domain() const noexcept { return domain_; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  std::size_t dim() const noexcept { return domain_.dim(); }
  std::size_t size() const noexcept { return domain_.size(); }

  /// Position of p in the domain; throws std::out_of_range outside it.
  std::size_t index_of(std::span<const Coord> p) const { return dom_index(domain_, p); }
  const Rational& at(std::span<const Coord> p) const { return values_[dom_index(domain_, p)]; }
  const Rational& at(const Point& p) const { return at(p.coords()); }

  Rational sum() const {
    Rational s = 0;
    for (const auto& v : values_) s += v;
    return s;
  }

  Rational max() const {
    Rational m = 0;
    for (const auto& v : values_) m = std::max(m, v);
    return m;
  }

  /// True when the domain equals its own convex progression.
  bool on_convex_progression() const { return !domain_.empty() && convex_progression(domain_).gap == 0; }

  friend bool operator==(const LatticeFunction& a, const LatticeFunction& b) {
    return a.domain_ == b.domain_ && a.values_ == b.values_;
  }

 private:
  static std::size_t dom_index(const LatticeSet& dom, std::span<const Coord> p) {
    std::size_t lo = 0, hi = dom.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      auto r = dom.row(mid);
      if (std::lexicographical_compare(r.begin(), r.end(), p.begin(), p.end()))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo == dom.size() || !std::equal(p.begin(), p.end(), dom.row(lo).begin()))
      throw std::out_of_range("point outside the function domain");
    return lo;
  }

  LatticeSet domain_;
  std::vector<Rational> values_;
};

namespace detail {

// Position of p in a sorted set, or set.size() when absent.
inline std::size_t position_in(const LatticeSet& set, std::span<const Coord> p) {
  std::size_t lo = 0, hi = set.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto r = set.row(mid);
    if (std::lexicographical_compare(r.begin(), r.end(), p.begin(), p.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < set.size() && std::equal(p.begin(), p.end(), set.row(lo).begin())) return lo;
  return set.size();
}

// Minimum per output cell. Cells are addressed through a dense index over
// the bounding box of A+A when it is small, else by binary search.
inline LatticeFunction inf_convolution_cells(const LatticeFunction& f, const LatticeSet& sum) {
  const auto& a = f.domain();
  const std::size_t k = a.dim();
  const bool dense = sum_box_volume(a, a) <= kBitsetVolumeLimit;
  auto [lo, hi] = sum.bounds();
  std::vector<std::uint64_t> stride(k);
  std::uint64_t volume = 1;
  for (std::size_t j = k; j-- > 0;) {
    stride[j] = volume;
    volume *= static_cast<std::uint64_t>(hi[j] - lo[j] + 1);
  }
  std::vector<std::size_t> slot;
  if (dense) {
    slot.assign(static_cast<std::size_t>(volume), sum.size());
    for (std::size_t i = 0; i < sum.size(); ++i) {
      std::uint64_t idx = 0;
      for (std::size_t j = 0; j < k; ++j) idx += static_cast<std::uint64_t>(sum.row(i)[j] - lo[j]) * stride[j];
      slot[static_cast<std::size_t>(idx)] = i;
    }
  }
  std::vector<std::optional<Rational>> best(sum.size());
  std::vector<Coord> z(k);
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = x; y < a.size(); ++y) {
      std::size_t cell;
      if (dense) {
        std::uint64_t idx = 0;
        for (std::size_t j = 0; j < k; ++j)
          idx += static_cast<std::uint64_t>(a.row(x)[j] + a.row(y)[j] - lo[j]) * stride[j];
        cell = slot[static_cast<std::size_t>(idx)];
      } else {
        for (std::size_t j = 0; j < k; ++j) z[j] = a.row(x)[j] + a.row(y)[j];
        cell = position_in(sum, z);
      }
      Rational v = f.values()[x] + f.values()[y];
      if (!best[cell] || v < *best[cell]) best[cell] = std::move(v);
    }
  std::vector<Rational> vals;
  vals.reserve(sum.size());
  for (auto& b : best) vals.push_back(std::move(*b));
  return LatticeFunction(sum, std::move(vals));
}

}  // namespace detail

/// f^□(z) = min_{x+y=z} f(x) + f(y) on A+A.
inline LatticeFunction inf_convolution(const LatticeFunction& f) {
  if (f.size() == 0) throw std::invalid_argument("inf_convolution of a function with empty domain");
  const LatticeSet sum = minkowski_sum(f.domain(), f.domain());
  return detail::inf_convolution_cells(f, sum);
}

/// Restricted infimum convolution on T+T: the minimum of g(x1) + g(x2) over
/// z = x1 + x2 with x1 a relative-interior lattice point of T and
/// x2 in ((x1 + W) ∩ T) ∪ V(T); 0 where no such split exists.
inline LatticeFunction restricted_inf_convolution(const LatticeFunction& g, const LatticeSet& w) {
  const LatticeSet& t = g.domain();
  if (t.empty()) throw std::invalid_argument("restricted_inf_convolution of a function with empty domain");
  if (w.dim() != t.dim()) throw std::invalid_argument("shift set dimension mismatch");
  const Polytope hull = convex_hull(t);
  if (static_cast<int>(hull.vertices().size()) != hull.affine_dim() + 1)
    throw std::invalid_argument("domain is not a simplex");
  if (lattice_points(hull) != t) throw std::invalid_argument("domain is not the full lattice simplex");

  const std::size_t k = t.dim();
  std::vector<std::size_t> corners;
  for (const auto& v : hull.vertices()) {
    std::vector<Coord> c(k);
    for (std::size_t j = 0; j < k; ++j) c[j] = to_int64(v[j].get_num());
    corners.push_back(g.index_of(c));
  }
  const Polytope open = hull.relative_interior();

  const LatticeSet sum = minkowski_sum(t, t);
  std::vector<std::optional<Rational>> best(sum.size());
  std::vector<Coord> z(k), x2(k);
  for (std::size_t i1 = 0; i1 < t.size(); ++i1) {
    if (!open.contains(t.row(i1))) continue;
    std::vector<std::size_t> partners = corners;
    for (std::size_t s = 0; s < w.size(); ++s) {
      for (std::size_t j = 0; j < k; ++j) x2[j] = t.row(i1)[j] + w.row(s)[j];
      if (t.contains(x2)) partners.push_back(g.index_of(x2));
    }
    for (auto i2 : partners) {
      for (std::size_t j = 0; j < k; ++j) z[j] = t.row(i1)[j] + t.row(i2)[j];
      auto& b = best[detail::position_in(sum, z)];
      Rational v = g.values()[i1] + g.values()[i2];
      if (!b || v < *b) b = std::move(v);
    }
  }
  std::vector<Rational> vals;
  vals.reserve(sum.size());
  for (auto& b : best) vals.push_back(b ? *b : Rational(0));
  return LatticeFunction(sum, std::move(vals));
}

/// Lower convex hull f^ at the domain points: the largest convex function
/// below f, read off the lower facets of the lifted graph.
inline LatticeFunction lower_convex_hull(const LatticeFunction& f) {
  if (f.size() == 0) throw std::invalid_argument("lower_convex_hull of a function with empty domain");
  const auto red = reduce_coordinates(f.domain());
  const std::size_t r = red.rank;
  if (r == 0) return f;

  // Heights are scaled to integers; a copy of the domain at height `top`
  // above every value makes the lifted set full-dimensional without adding
  // lower facets.
  const Integer den = lcm_of_denominators(f.values());
  Integer top = 0;
  for (const auto& v : f.values()) top = std::max(top, Integer(Rational(v * den).get_num()));
  top += 1;

  std::vector<hull::IVec> base_pts;
  std::vector<std::size_t> orig_index;
  std::vector<hull::IVec> lifted;
  for (std::size_t i = 0; i < red.set.size(); ++i) {
    hull::IVec y;
    for (std::size_t j = 0; j < r; ++j) y.push_back(to_integer(red.set.row(i)[j]));
    const std::size_t oi = f.index_of(red.map.apply(red.set.row(i)).coords());
    orig_index.push_back(oi);
    hull::IVec low = y, high = y;
    low.push_back(Rational(f.values()[oi] * den).get_num());
    high.push_back(top);
    lifted.push_back(std::move(low));
    lifted.push_back(std::move(high));
    base_pts.push_back(std::move(y));
  }
  const auto h = hull::full_hull(lifted);

  std::vector<Rational> out(f.size());
  for (std::size_t i = 0; i < base_pts.size(); ++i) {
    std::optional<Rational> best;
    for (const auto& face : h.faces) {
      const Integer& nh = face.normal[r];
      if (sgn(nh) >= 0) continue;
      // n.y + nh * height <= offset, so height >= (n.y - offset) / (-nh).
      Integer s = 0;
      for (std::size_t j = 0; j < r; ++j) s += face.normal[j] * base_pts[i][j];
      Rational val(s - face.offset, Integer(-nh));
      val.canonicalize();
      if (!best || val > *best) best = std::move(val);
    }
    out[orig_index[i]] = *best / Rational(den);
  }
  return LatticeFunction(f.domain(), std::move(out));
}

/// {(a, x) : a in A, ceil(N f(a)) <= x <= M}, in dimension k+1.
inline LatticeSet epigraph_lift(const LatticeFunction& f, std::int64_t n, std::int64_t m) {
  if (n <= 0) throw std::invalid_argument("epigraph_lift needs N > 0");
  const std::size_t k = f.dim();
  std::vector<Coord> flat;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Integer floor_height = ceil_of(f.values()[i] * Rational(to_integer(n)));
    if (floor_height > to_integer(m)) throw std::invalid_argument("epigraph_lift: M is below ceil(N f(a))");
    for (Coord x = to_int64(floor_height); x <= m; ++x) {
      flat.insert(flat.end(), f.domain().row(i).begin(), f.domain().row(i).end());
      flat.push_back(x);
    }
  }
  return LatticeSet::from_flat(k + 1, std::move(flat));
}

struct FunctionalDeficitReport {
  Rational hull_deficit;  // sum of f - f^
  Rational conv_deficit;  // 2^{k+1} sum f - sum f^□
  std::optional<Rational> ratio;
};

inline FunctionalDeficitReport functional_deficit(const LatticeFunction& f) {
  if (!f.on_convex_progression()) throw std::invalid_argument("functional_deficit needs a convex progression domain");
  const auto hat = lower_convex_hull(f);
  const auto box = inf_convolution(f);
  FunctionalDeficitReport r;
  r.hull_deficit = f.sum() - hat.sum();
  r.conv_deficit = pow2(static_cast<int>(f.dim()) + 1) * f.sum() - box.sum();
  if (sgn(r.conv_deficit) > 0) r.ratio = r.hull_deficit / r.conv_deficit;
  return r;
}

}  // namespace sumstab
