#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sumstab/lattice.hpp"
#include "sumstab/rational.hpp"

namespace sumstab {

using IntRow = std::vector<Integer>;
using IntMatrix = std::vector<IntRow>;

namespace detail {

inline void axpy(IntRow& row, const Integer& q, const IntRow& other) {
  for (std::size_t j = 0; j < row.size(); ++j) row[j] -= q * other[j];
}

}  // namespace detail

/// Row-style Hermite normal form of the integer row lattice spanned by
/// `rows`. Zero rows are dropped; pivots are positive and entries above a
/// pivot lie in [0, pivot).
inline IntMatrix hermite_normal_form(IntMatrix rows) {
  if (rows.empty()) return rows;
  const std::size_t k = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < rows.size(); ++c) {
    while (true) {
      // Pick the smallest nonzero |entry| in column c at or below row r.
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (sgn(rows[i][c]) == 0) continue;
        if (!best || abs(rows[i][c]) < abs(rows[*best][c])) best = i;
      }
      if (!best) break;
      std::swap(rows[r], rows[*best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (sgn(rows[i][c]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        detail::axpy(rows[i], q, rows[r]);
        if (sgn(rows[i][c]) != 0) done = false;
      }
      if (done) break;
    }
    if (r >= rows.size() || sgn(rows[r][c]) == 0) continue;
    if (sgn(rows[r][c]) < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (sgn(q) != 0) detail::axpy(rows[i], q, rows[r]);
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

/// Pivot column of each HNF row.
inline std::vector<std::size_t> pivot_columns(const IntMatrix& hnf) {
  std::vector<std::size_t> piv;
  for (const auto& row : hnf) {
    std::size_t c = 0;
    while (c < row.size() && sgn(row[c]) == 0) ++c;
    piv.push_back(c);
  }
  return piv;
}

/// base + (integer row span of basis); basis kept in Hermite normal form
/// and base reduced to the canonical fundamental-domain representative.
class AffineSublattice {
 public:
  AffineSublattice(std::vector<Integer> base, IntMatrix basis)
      : basis_(hermite_normal_form(std::move(basis))), base_(std::move(base)) {
    pivots_ = pivot_columns(basis_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), base_[pivots_[i]].get_mpz_t(), basis_[i][pivots_[i]].get_mpz_t());
      if (sgn(q) != 0) detail::axpy(base_, q, basis_[i]);
    }
  }

  std::size_t dim() const noexcept { return base_.size(); }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<Integer>& base() const noexcept { return base_; }
  const IntMatrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Index of the lattice inside Z^rank restricted to its pivot coordinates,
  /// i.e. the product of pivots.
  Integer pivot_product() const {
    Integer d = 1;
    for (std::size_t i = 0; i < rank(); ++i) d *= basis_[i][pivots_[i]];
    return d;
  }

  /// Integer coordinates of p in the basis, if p lies in the lattice.
  std::optional<std::vector<Integer>> coordinates_of(std::span<const Coord> p) const {
    if (p.size() != dim()) return std::nullopt;
    IntRow v(dim());
    for (std::size_t j = 0; j < dim(); ++j) v[j] = to_integer(p[j]) - base_[j];
    std::vector<Integer> coeffs(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      const Integer& piv = basis_[i][pivots_[i]];
      if (!mpz_divisible_p(v[pivots_[i]].get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
      coeffs[i] = v[pivots_[i]] / piv;
      detail::axpy(v, coeffs[i], basis_[i]);
    }
    for (const auto& x : v)
      if (sgn(x) != 0) return std::nullopt;
    return coeffs;
  }

  bool contains(std::span<const Coord> p) const { return coordinates_of(p).has_value(); }
  bool contains(const Point& p) const { return contains(p.coords()); }

  friend bool operator==(const AffineSublattice& a, const AffineSublattice& b) {
    return a.base_ == b.base_ && a.basis_ == b.basis_;
  }

 private:
  IntMatrix basis_;
  std::vector<Integer> base_;
  std::vector<std::size_t> pivots_;
};

/// The smallest affine sublattice containing A (translate of the group
/// generated by the differences of A).
inline AffineSublattice affine_sublattice(const LatticeSet& a) {
  if (a.empty()) throw std::invalid_argument("affine_sublattice of an empty set");
  const std::size_t k = a.dim();
  auto r0 = a.row(0);
  std::vector<Integer> base(k);
  for (std::size_t j = 0; j < k; ++j) base[j] = to_integer(r0[j]);
  IntMatrix basis;
  for (std::size_t i = 1; i < a.size(); ++i) {
    IntRow d(k);
    bool nonzero = false;
    for (std::size_t j = 0; j < k; ++j) {
      d[j] = to_integer(a.row(i)[j]) - base[j];
      nonzero = nonzero || sgn(d[j]) != 0;
    }
    if (!nonzero) continue;
    // Keep the running basis small: at most k HNF rows at a time.
    basis.push_back(std::move(d));
    if (basis.size() > k) basis = hermite_normal_form(std::move(basis));
  }
  return AffineSublattice(std::move(base), std::move(basis));
}

inline bool is_reduced(const LatticeSet& a) {
  auto lat = affine_sublattice(a);
  return lat.rank() == a.dim() && lat.pivot_product() == 1;
}

/// True when A generates its own affine lattice with unit pivots, i.e. it is
/// reduced inside its affine span.
inline bool is_reduced_in_span(const LatticeSet& a) {
  return affine_sublattice(a).pivot_product() == 1;
}

/// x = base + sum_i c_i basis_i for the coordinate vector c.
struct AffineMap {
  std::vector<Integer> base;
  IntMatrix basis;

  Point apply(std::span<const Coord> c) const {
    std::vector<Coord> out(base.size());
    for (std::size_t j = 0; j < base.size(); ++j) {
      Integer x = base[j];
      for (std::size_t i = 0; i < basis.size(); ++i) x += to_integer(c[i]) * basis[i][j];
      out[j] = to_int64(x);
    }
    return Point(std::move(out));
  }
};

struct ReducedCoordinates {
  LatticeSet set;  // same dimension k; coordinates beyond the rank are 0
  AffineMap map;   // sends output coordinates back to the input points
  std::size_t rank = 0;
};

/// Rewrites A in the coordinates of its affine lattice.
inline ReducedCoordinates reduce_coordinates(const LatticeSet& a) {
  auto lat = affine_sublattice(a);
  const std::size_t k = a.dim();
  std::vector<Coord> flat;
  flat.reserve(a.size() * k);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto c = lat.coordinates_of(a.row(i));
    if (!c) throw std::logic_error("point outside its own affine lattice");
    for (std::size_t j = 0; j < k; ++j) flat.push_back(j < c->size() ? to_int64((*c)[j]) : 0);
  }
  ReducedCoordinates out{LatticeSet::from_flat(k, std::move(flat)), AffineMap{lat.base(), lat.basis()},
                         lat.rank()};
  return out;
}

}  // namespace sumstab
