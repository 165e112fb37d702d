#pragma once

#include <stdexcept>
#include <vector>

#include "sumstab/lattice.hpp"
#include "sumstab/rational.hpp"

namespace sumstab {

/// Generalized arithmetic progression {b + sum l_i v_i : 0 <= l_i < n_i}.
class Gap {
 public:
  Gap(Point base, std::vector<Point> vectors, std::vector<Coord> lengths)
      : base_(std::move(base)), vectors_(std::move(vectors)), lengths_(std::move(lengths)) {
    if (vectors_.size() != lengths_.size()) throw std::invalid_argument("GAP needs one length per vector");
    for (const auto& v : vectors_)
      if (v.dim() != base_.dim()) throw std::invalid_argument("GAP vector dimension mismatch");
    for (Coord n : lengths_)
      if (n < 1) throw std::invalid_argument("GAP lengths must be positive");
  }

  /// B(n_1,...,n_k) = prod {1,...,n_i}.
  static Gap box(const std::vector<Coord>& sides) {
    return box_at(Point(std::vector<Coord>(sides.size(), 1)), sides);
  }

  /// base + prod {0,...,n_i - 1}.
  static Gap box_at(const Point& base, const std::vector<Coord>& sides) {
    if (sides.empty() || sides.size() != base.dim()) throw std::invalid_argument("box side count mismatch");
    std::vector<Point> vs;
    for (std::size_t i = 0; i < sides.size(); ++i) {
      Point e = Point::zero(sides.size());
      e[i] = 1;
      vs.push_back(e);
    }
    return Gap(base, std::move(vs), sides);
  }

  std::size_t dim() const noexcept { return base_.dim(); }
  std::size_t rank() const noexcept { return vectors_.size(); }
  const Point& base() const noexcept { return base_; }
  const std::vector<Point>& vectors() const noexcept { return vectors_; }
  const std::vector<Coord>& lengths() const noexcept { return lengths_; }

  bool is_box() const {
    if (rank() != dim()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        if (vectors_[i][j] != (i == j ? 1 : 0)) return false;
    return true;
  }

  /// prod n_i, an upper bound on the cardinality.
  Integer nominal_size() const {
    Integer s = 1;
    for (Coord n : lengths_) s *= to_integer(n);
    return s;
  }

  Coord min_length() const {
    Coord m = lengths_.empty() ? 1 : lengths_[0];
    for (Coord n : lengths_) m = std::min(m, n);
    return m;
  }

  Coord lower(std::size_t axis) const { return base_[axis]; }
  Coord upper(std::size_t axis) const { return base_[axis] + lengths_[axis] - 1; }

  bool box_contains(std::span<const Coord> p) const {
    for (std::size_t j = 0; j < dim(); ++j)
      if (p[j] < lower(j) || p[j] > upper(j)) return false;
    return true;
  }

  LatticeSet enumerate() const {
    std::vector<Coord> flat;
    std::vector<Coord> ell(rank(), 0);
    while (true) {
      for (std::size_t j = 0; j < dim(); ++j) {
        Coord x = base_[j];
        for (std::size_t i = 0; i < rank(); ++i) x += ell[i] * vectors_[i][j];
        flat.push_back(x);
      }
      std::size_t i = 0;
      while (i < rank() && ++ell[i] == lengths_[i]) ell[i++] = 0;
      if (i == rank()) break;
    }
    return LatticeSet::from_flat(dim(), std::move(flat));
  }

  /// True when l -> b + sum l_i v_i is injective on the index box.
  bool is_proper() const { return Integer(static_cast<unsigned long>(enumerate().size())) == nominal_size(); }

  /// The box projected away from the first coordinate.
  Gap projected_box() const {
    if (!is_box() || dim() < 2) throw std::invalid_argument("projected_box needs a box of dimension >= 2");
    std::vector<Coord> b(base_.coords().begin() + 1, base_.coords().end());
    std::vector<Coord> n(lengths_.begin() + 1, lengths_.end());
    return box_at(Point(std::move(b)), n);
  }

 private:
  Point base_;
  std::vector<Point> vectors_;
  std::vector<Coord> lengths_;
};

}  // namespace sumstab
