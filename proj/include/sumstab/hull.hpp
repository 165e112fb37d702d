#pragma once

// Exact convex hulls of integer point sets.
//
// full_hull() runs a beneath-beyond incremental construction on points whose
// affine span is the whole space. Points on a facet plane count as not
// visible, so the simplicial pieces may contain coplanar neighbours and
// non-extreme points; faces and vertices are recovered afterwards by grouping
// pieces on identical planes and testing the rank of the normal cone.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sumstab/rational.hpp"

namespace sumstab::hull {

using IVec = std::vector<Integer>;

/// Determinant of a square integer matrix (Bareiss elimination).
inline Integer determinant(std::vector<IVec> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t sw = k + 1;
      while (sw < n && sgn(m[sw][k]) == 0) ++sw;
      if (sw == n) return 0;
      std::swap(m[k], m[sw]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Row echelon data of a set of integer vectors over Q.
struct Echelon {
  std::vector<std::size_t> pivots;     // pivot columns
  std::vector<std::size_t> basis_rows; // indices of input rows forming a basis
  std::vector<std::vector<Rational>> rref;  // reduced rows, one per pivot
};

inline Echelon echelon(const std::vector<IVec>& rows, std::size_t k) {
  Echelon e;
  std::vector<std::vector<Rational>> basis;  // kept in reduced form
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    std::vector<Rational> v(rows[idx].begin(), rows[idx].end());
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Rational f = v[e.pivots[b]];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < k; ++j) v[j] -= f * basis[b][j];
    }
    std::size_t p = 0;
    while (p < k && sgn(v[p]) == 0) ++p;
    if (p == k) continue;
    const Rational lead = v[p];
    for (auto& x : v) x /= lead;
    for (auto& row : basis) {
      const Rational f = row[p];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < k; ++j) row[j] -= f * v[j];
    }
    basis.push_back(std::move(v));
    e.pivots.push_back(p);
    e.basis_rows.push_back(idx);
    if (basis.size() == k) break;
  }
  e.rref = std::move(basis);
  return e;
}

/// Integer basis of the orthogonal complement of the row space.
inline std::vector<IVec> orthogonal_complement(const Echelon& e, std::size_t k) {
  std::vector<IVec> out;
  std::vector<bool> is_pivot(k, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < k; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> z(k, 0);
    z[free] = 1;
    for (std::size_t b = 0; b < e.pivots.size(); ++b) z[e.pivots[b]] = -e.rref[b][free];
    Integer den = 1;
    for (auto& x : z) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    IVec iz(k);
    Integer g = 0;
    for (std::size_t j = 0; j < k; ++j) {
      iz[j] = Rational(z[j] * den).get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iz[j].get_mpz_t());
    }
    for (auto& x : iz) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    out.push_back(std::move(iz));
  }
  return out;
}

inline Integer dot(const IVec& a, const IVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Piece {
  std::vector<std::size_t> verts;  // d point indices (sorted)
  IVec normal;                     // outward
  Integer offset;                  // normal . x <= offset on the hull
};

struct Face {
  IVec normal;  // primitive, outward
  Integer offset;
  std::vector<std::size_t> verts;  // extreme points on the face plane, sorted
};

struct FullHull {
  std::size_t dim = 0;
  std::vector<Piece> pieces;        // simplicial tiling of the boundary
  std::vector<Face> faces;          // facets
  std::vector<std::size_t> vertices;  // extreme points, sorted by index
  Integer volume_times_factorial;     // d! * volume
};

namespace detail {

inline std::optional<Piece> hyperplane_through(const std::vector<IVec>& pts, std::vector<std::size_t> verts,
                                               const IVec& interior_scaled, const Integer& scale) {
  const std::size_t d = pts[verts[0]].size();
  IVec normal(d);
  if (d == 1) {
    normal[0] = 1;
  } else {
    std::vector<IVec> m;
    for (std::size_t i = 1; i < verts.size(); ++i) {
      IVec row(d);
      for (std::size_t j = 0; j < d; ++j) row[j] = pts[verts[i]][j] - pts[verts[0]][j];
      m.push_back(std::move(row));
    }
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<IVec> minor;
      for (const auto& row : m) {
        IVec r;
        for (std::size_t j = 0; j < d; ++j)
          if (j != c) r.push_back(row[j]);
        minor.push_back(std::move(r));
      }
      normal[c] = determinant(std::move(minor));
      if (c % 2 == 1) normal[c] = -normal[c];
    }
  }
  Integer g = 0;
  for (const auto& x : normal) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (sgn(g) == 0) return std::nullopt;
  for (auto& x : normal) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  Integer offset = dot(normal, pts[verts[0]]);
  // interior = interior_scaled / scale must satisfy normal . interior < offset.
  if (dot(normal, interior_scaled) > scale * offset) {
    for (auto& x : normal) x = -x;
    offset = -offset;
  }
  std::sort(verts.begin(), verts.end());
  return Piece{std::move(verts), std::move(normal), std::move(offset)};
}

inline std::size_t matrix_rank(const std::vector<IVec>& rows, std::size_t k) {
  return echelon(rows, k).pivots.size();
}

}  // namespace detail

/// Hull of points whose affine span is all of Z^d (d = point dimension).
inline FullHull full_hull(const std::vector<IVec>& pts) {
  if (pts.empty()) throw std::invalid_argument("hull of an empty point set");
  const std::size_t d = pts[0].size();
  FullHull h;
  h.dim = d;

  // Initial simplex.
  std::vector<std::size_t> simplex{0};
  std::vector<IVec> diffs;
  for (std::size_t i = 1; i < pts.size() && simplex.size() < d + 1; ++i) {
    IVec diff(d);
    for (std::size_t j = 0; j < d; ++j) diff[j] = pts[i][j] - pts[0][j];
    diffs.push_back(diff);
    if (detail::matrix_rank(diffs, d) == diffs.size()) {
      simplex.push_back(i);
    } else {
      diffs.pop_back();
    }
  }
  if (simplex.size() != d + 1) throw std::invalid_argument("full_hull: points are not full-dimensional");

  IVec interior(d, 0);
  for (auto i : simplex)
    for (std::size_t j = 0; j < d; ++j) interior[j] += pts[i][j];
  const Integer scale = static_cast<unsigned long>(d + 1);

  std::vector<Piece> pieces;
  for (std::size_t drop = 0; drop <= d; ++drop) {
    std::vector<std::size_t> verts;
    for (std::size_t t = 0; t <= d; ++t)
      if (t != drop) verts.push_back(simplex[t]);
    pieces.push_back(*detail::hyperplane_through(pts, verts, interior, scale));
  }

  std::vector<bool> in_simplex(pts.size(), false);
  for (auto i : simplex) in_simplex[i] = true;

  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (in_simplex[p]) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < pieces.size(); ++f)
      if (dot(pieces[f].normal, pts[p]) > pieces[f].offset) visible.push_back(f);
    if (visible.empty()) continue;
    std::map<std::vector<std::size_t>, int> ridges;
    for (auto f : visible) {
      const auto& vs = pieces[f].verts;
      for (std::size_t t = 0; t < vs.size(); ++t) {
        std::vector<std::size_t> r;
        for (std::size_t u = 0; u < vs.size(); ++u)
          if (u != t) r.push_back(vs[u]);
        ++ridges[r];
      }
    }
    std::vector<Piece> next;
    next.reserve(pieces.size() + ridges.size());
    std::size_t vi = 0;
    for (std::size_t f = 0; f < pieces.size(); ++f) {
      if (vi < visible.size() && visible[vi] == f) {
        ++vi;
        continue;
      }
      next.push_back(std::move(pieces[f]));
    }
    for (auto& [ridge, count] : ridges) {
      if (count != 1) continue;
      auto verts = ridge;
      verts.push_back(p);
      auto piece = detail::hyperplane_through(pts, std::move(verts), interior, scale);
      if (!piece) throw std::logic_error("full_hull: degenerate horizon piece");
      next.push_back(std::move(*piece));
    }
    pieces = std::move(next);
  }

  // Group pieces into faces.
  std::map<std::pair<IVec, Integer>, std::size_t> face_index;
  for (const auto& pc : pieces) {
    auto key = std::make_pair(pc.normal, pc.offset);
    if (!face_index.count(key)) {
      face_index.emplace(key, h.faces.size());
      h.faces.push_back(Face{pc.normal, pc.offset, {}});
    }
  }
  std::vector<std::size_t> candidates;
  for (const auto& pc : pieces) candidates.insert(candidates.end(), pc.verts.begin(), pc.verts.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (auto c : candidates) {
    std::vector<IVec> normals;
    std::vector<std::size_t> on;
    for (std::size_t f = 0; f < h.faces.size(); ++f)
      if (dot(h.faces[f].normal, pts[c]) == h.faces[f].offset) {
        normals.push_back(h.faces[f].normal);
        on.push_back(f);
      }
    if (detail::matrix_rank(normals, d) == d) {
      h.vertices.push_back(c);
      for (auto f : on) h.faces[f].verts.push_back(c);
    }
  }

  // d! * volume: cone over each piece from a fixed vertex.
  const IVec& apex = pts[h.vertices.front()];
  Integer vol = 0;
  for (const auto& pc : pieces) {
    std::vector<IVec> m;
    for (auto v : pc.verts) {
      IVec row(d);
      for (std::size_t j = 0; j < d; ++j) row[j] = pts[v][j] - apex[j];
      m.push_back(std::move(row));
    }
    vol += abs(determinant(std::move(m)));
  }
  h.volume_times_factorial = vol;
  h.pieces = std::move(pieces);
  return h;
}

}  // namespace sumstab::hull
