#pragma once

// Brute-force reference computations for the tests. None of these call into
// the library beyond its value types, so agreement is a real cross-check.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "sumstab/lattice.hpp"
#include "sumstab/rational.hpp"

namespace oracle {

using sumstab::Coord;
using sumstab::Integer;
using sumstab::LatticeSet;
using sumstab::Rational;
using Vec = std::vector<Coord>;

inline std::vector<Vec> points(const LatticeSet& a) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.emplace_back(a.row(i).begin(), a.row(i).end());
  return out;
}

inline std::set<Vec> sumset(const LatticeSet& a, const LatticeSet& b) {
  std::set<Vec> out;
  for (const auto& x : points(a))
    for (const auto& y : points(b)) {
      Vec z(x.size());
      for (std::size_t j = 0; j < z.size(); ++j) z[j] = x[j] + y[j];
      out.insert(z);
    }
  return out;
}

inline LatticeSet to_set(std::size_t dim, const std::set<Vec>& s) {
  std::vector<Coord> flat;
  for (const auto& p : s) flat.insert(flat.end(), p.begin(), p.end());
  return LatticeSet::from_sorted_flat(dim, std::move(flat));
}

// Solves sum_i lambda_i p_i = x, sum_i lambda_i = 1 exactly. Returns the
// unique solution when the p_i are affinely independent and one exists.
inline std::optional<std::vector<Rational>> barycentric(const std::vector<std::vector<Rational>>& pts,
                                                        const std::vector<Rational>& x) {
  const std::size_t m = pts.size(), d = x.size();
  std::vector<std::vector<Rational>> rows;  // augmented [A | b]
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Rational> r(m + 1);
    for (std::size_t i = 0; i < m; ++i) r[i] = pts[i][j];
    r[m] = x[j];
    rows.push_back(r);
  }
  std::vector<Rational> ones(m + 1, 1);
  rows.push_back(ones);
  std::size_t rank = 0;
  std::vector<std::size_t> pivcol;
  for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) return std::nullopt;  // dependent columns
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c <= m; ++c) rows[r][c] -= f * rows[rank][c];
    }
    pivcol.push_back(col);
    ++rank;
  }
  if (rank < m) return std::nullopt;
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r][m] != 0) return std::nullopt;  // inconsistent
  std::vector<Rational> lambda(m);
  for (std::size_t r = 0; r < rank; ++r) lambda[pivcol[r]] = rows[r][m] / rows[r][pivcol[r]];
  return lambda;
}

inline std::vector<Rational> to_q(const Vec& v) { return std::vector<Rational>(v.begin(), v.end()); }

// Calls fn on every subset of {0..n-1} of size 1..maxsize.
template <class Fn>
void for_subsets(std::size_t n, std::size_t maxsize, Fn&& fn) {
  std::vector<std::size_t> idx;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!idx.empty()) fn(idx);
    if (idx.size() == maxsize) return;
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
}

/// Convex-hull membership by Carathéodory: x lies in some simplex spanned by
/// at most d+1 affinely independent points of A.
inline bool in_hull(const std::vector<Vec>& a, const std::vector<Rational>& x) {
  bool found = false;
  for_subsets(a.size(), x.size() + 1, [&](const std::vector<std::size_t>& s) {
    if (found) return;
    std::vector<std::vector<Rational>> pts;
    for (auto i : s) pts.push_back(to_q(a[i]));
    auto lam = barycentric(pts, x);
    if (lam && std::all_of(lam->begin(), lam->end(), [](const Rational& l) { return l >= 0; })) found = true;
  });
  return found;
}

/// Lattice points of co(A) by scanning the bounding box.
inline std::set<Vec> lattice_hull(const LatticeSet& a) {
  const auto pts = points(a);
  std::set<Vec> out;
  if (pts.empty()) return out;
  const std::size_t k = a.dim();
  Vec lo = pts[0], hi = pts[0];
  for (const auto& p : pts)
    for (std::size_t j = 0; j < k; ++j) {
      lo[j] = std::min(lo[j], p[j]);
      hi[j] = std::max(hi[j], p[j]);
    }
  Vec x = lo;
  while (true) {
    if (in_hull(pts, to_q(x))) out.insert(x);
    std::size_t j = 0;
    while (j < k && ++x[j] > hi[j]) x[j] = lo[j], ++j;
    if (j == k) break;
  }
  return out;
}

inline long cross(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Counter-clockwise hull of planar points by monotone chain, collinear
/// points dropped. Needs at least three non-collinear points.
inline std::vector<Vec> planar_hull(std::vector<Vec> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  std::vector<Vec> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

/// Area of the hull of planar points via the shoelace formula.
inline Rational planar_hull_area(std::vector<Vec> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return 0;
  const auto h = planar_hull(std::move(p));
  if (h.size() < 3) return 0;
  long twice = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& a = h[i];
    const auto& b = h[(i + 1) % h.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  Rational area(std::labs(twice), 2);
  area.canonicalize();
  return area;
}

/// Lattice points of a full-dimensional planar hull: bounding-box scan with
/// one orientation test per edge.
inline std::size_t planar_lattice_hull_size(const std::vector<Vec>& pts) {
  const auto h = planar_hull(pts);
  Vec lo = h[0], hi = h[0];
  for (const auto& v : h)
    for (std::size_t j = 0; j < 2; ++j) {
      lo[j] = std::min(lo[j], v[j]);
      hi[j] = std::max(hi[j], v[j]);
    }
  std::size_t count = 0;
  for (Coord x = lo[0]; x <= hi[0]; ++x)
    for (Coord y = lo[1]; y <= hi[1]; ++y) {
      const Vec q{x, y};
      bool inside = true;
      for (std::size_t i = 0; i < h.size() && inside; ++i) inside = cross(h[i], h[(i + 1) % h.size()], q) >= 0;
      count += inside;
    }
  return count;
}

/// Index-based membership in Λ_A for full-rank A in dimension <= 3: x lies
/// in Λ_A exactly when adding x - a_0 to the generators keeps the gcd of the
/// k x k minors.
inline long det(const std::vector<Vec>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline long minor_gcd(const std::vector<Vec>& gens, std::size_t k) {
  long g = 0;
  std::vector<Vec> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == k) {
      g = std::gcd(g, det(pick));
      return;
    }
    for (std::size_t i = start; i < gens.size(); ++i) {
      pick.push_back(gens[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return g;
}

inline bool in_affine_lattice(const LatticeSet& a, const Vec& x) {
  const auto pts = points(a);
  const std::size_t k = a.dim();
  std::vector<Vec> gens;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Vec d(k);
    for (std::size_t j = 0; j < k; ++j) d[j] = pts[i][j] - pts[0][j];
    gens.push_back(d);
  }
  const long base = minor_gcd(gens, k);
  Vec d(k);
  for (std::size_t j = 0; j < k; ++j) d[j] = x[j] - pts[0][j];
  gens.push_back(d);
  return base != 0 && minor_gcd(gens, k) == base;
}

/// f^□ by exhaustive pairs through an ordered map.
inline std::map<Vec, Rational> inf_convolution(const LatticeSet& dom, const std::vector<Rational>& vals) {
  std::map<Vec, Rational> best;
  const auto pts = points(dom);
  for (std::size_t x = 0; x < pts.size(); ++x)
    for (std::size_t y = 0; y < pts.size(); ++y) {
      Vec z(dom.dim());
      for (std::size_t j = 0; j < z.size(); ++j) z[j] = pts[x][j] + pts[y][j];
      const Rational v = vals[x] + vals[y];
      auto [it, fresh] = best.emplace(z, v);
      if (!fresh && v < it->second) it->second = v;
    }
  return best;
}

/// f^ at each domain point: the least convex combination of at most d+1
/// graph points sitting over it.
inline std::vector<Rational> lower_hull(const LatticeSet& dom, const std::vector<Rational>& vals) {
  const auto pts = points(dom);
  std::vector<Rational> out;
  for (const auto& x : pts) {
    std::optional<Rational> best;
    for_subsets(pts.size(), dom.dim() + 1, [&](const std::vector<std::size_t>& s) {
      std::vector<std::vector<Rational>> ps;
      for (auto i : s) ps.push_back(to_q(pts[i]));
      auto lam = barycentric(ps, to_q(x));
      if (!lam || !std::all_of(lam->begin(), lam->end(), [](const Rational& l) { return l >= 0; })) return;
      Rational v = 0;
      for (std::size_t t = 0; t < s.size(); ++t) v += (*lam)[t] * vals[s[t]];
      if (!best || v < *best) best = v;
    });
    out.push_back(*best);
  }
  return out;
}

/// d_1 and |co^(A) \ A| for a 1-D set via word operations; A ⊆ {0..63}.
inline void freiman_bits(std::uint64_t mask, long& d1, long& gap) {
  const long card = std::popcount(mask);
  std::uint64_t lo_sum = 0, hi_sum = 0;  // bits 0..63 and 64..127 of A+A
  long g = 0, lo = -1, hi = -1;
  for (int x = 0; x < 64; ++x)
    if (mask >> x & 1) {
      lo_sum |= mask << x;
      if (x > 0) hi_sum |= mask >> (64 - x);
      if (lo < 0) lo = x;
      hi = x;
    }
  for (int x = 0; x < 64; ++x)
    if (mask >> x & 1) g = std::gcd(g, static_cast<long>(x - lo));
  d1 = std::popcount(lo_sum) + std::popcount(hi_sum) - 2 * card;
  gap = (g == 0 ? 1 : (hi - lo) / g + 1) - card;
}

}  // namespace oracle
