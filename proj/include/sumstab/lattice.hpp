#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumstab {

using Coord = std::int64_t;

/// Largest admissible coordinate magnitude. Sums and differences of two
/// admissible coordinates never overflow 64 bits.
inline constexpr Coord kCoordLimit = Coord{1} << 60;

inline void check_coord(Coord c) {
  if (c > kCoordLimit || c < -kCoordLimit)
    throw std::overflow_error("coordinate " + std::to_string(c) + " exceeds 2^60");
}

/// A point of Z^k.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Coord> coords) : c_(std::move(coords)) {
    for (Coord x : c_) check_coord(x);
  }
  Point(std::initializer_list<Coord> coords) : Point(std::vector<Coord>(coords)) {}
  explicit Point(std::span<const Coord> coords) : Point(std::vector<Coord>(coords.begin(), coords.end())) {}

  static Point zero(std::size_t dim) { return Point(std::vector<Coord>(dim, 0)); }

  std::size_t dim() const noexcept { return c_.size(); }
  Coord operator[](std::size_t i) const { return c_[i]; }
  Coord& operator[](std::size_t i) { return c_[i]; }
  std::span<const Coord> coords() const noexcept { return c_; }
  const std::vector<Coord>& vec() const noexcept { return c_; }

  friend auto operator<=>(const Point&, const Point&) = default;
  friend bool operator==(const Point&, const Point&) = default;

  friend Point operator+(const Point& a, const Point& b) {
    require_same_dim(a, b);
    std::vector<Coord> r(a.dim());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return Point(std::move(r));
  }
  friend Point operator-(const Point& a, const Point& b) {
    require_same_dim(a, b);
    std::vector<Coord> r(a.dim());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
    return Point(std::move(r));
  }
  friend Point operator-(const Point& a) {
    std::vector<Coord> r(a.dim());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = -a[i];
    return Point(std::move(r));
  }

  friend std::ostream& operator<<(std::ostream& os, const Point& p) {
    os << '(';
    for (std::size_t i = 0; i < p.dim(); ++i) os << (i ? "," : "") << p[i];
    return os << ')';
  }

 private:
  static void require_same_dim(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("point dimension mismatch");
  }
  std::vector<Coord> c_;
};

/// A finite, deduplicated subset of Z^k. Points are stored row-major in
/// lexicographic order, so iteration order is canonical.
class LatticeSet {
 public:
  explicit LatticeSet(std::size_t dim = 1) : dim_(dim) {
    if (dim == 0) throw std::invalid_argument("lattice set dimension must be >= 1");
  }

  LatticeSet(std::size_t dim, const std::vector<Point>& pts) : LatticeSet(dim) {
    flat_.reserve(pts.size() * dim);
    for (const auto& p : pts) {
      if (p.dim() != dim)
        throw std::invalid_argument("point of dimension " + std::to_string(p.dim()) +
                                    " in set of dimension " + std::to_string(dim));
      flat_.insert(flat_.end(), p.coords().begin(), p.coords().end());
    }
    normalize();
  }

  LatticeSet(std::initializer_list<Point> pts)
      : LatticeSet(pts.size() ? pts.begin()->dim() : 1, std::vector<Point>(pts)) {}

  /// Builds from a row-major coordinate buffer; sorts and deduplicates.
  static LatticeSet from_flat(std::size_t dim, std::vector<Coord> flat) {
    if (dim == 0 || flat.size() % dim != 0) throw std::invalid_argument("flat buffer size is not a multiple of dim");
    for (Coord c : flat) check_coord(c);
    LatticeSet s(dim);
    s.flat_ = std::move(flat);
    s.normalize();
    return s;
  }

  /// Trusted constructor: buffer must already be sorted, unique, in range.
  static LatticeSet from_sorted_flat(std::size_t dim, std::vector<Coord> flat) {
    LatticeSet s(dim);
    s.flat_ = std::move(flat);
    return s;
  }

  static LatticeSet interval(Coord lo, Coord hi) {
    std::vector<Coord> f;
    for (Coord x = lo; x <= hi; ++x) f.push_back(x);
    return from_sorted_flat(1, std::move(f));
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return flat_.size() / dim_; }
  bool empty() const noexcept { return flat_.empty(); }

  std::span<const Coord> row(std::size_t i) const { return {flat_.data() + i * dim_, dim_}; }
  Point point(std::size_t i) const { return Point(row(i)); }
  const std::vector<Coord>& flat() const noexcept { return flat_; }

  std::vector<Point> points() const {
    std::vector<Point> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
    return out;
  }

  bool contains(std::span<const Coord> p) const {
    if (p.size() != dim_) return false;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      auto r = row(mid);
      if (std::lexicographical_compare(r.begin(), r.end(), p.begin(), p.end()))
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo < size() && std::equal(p.begin(), p.end(), row(lo).begin());
  }
  bool contains(const Point& p) const { return contains(p.coords()); }

  bool is_subset_of(const LatticeSet& other) const {
    if (other.dim_ != dim_) return false;
    for (std::size_t i = 0; i < size(); ++i)
      if (!other.contains(row(i))) return false;
    return true;
  }

  LatticeSet translated(const Point& t) const {
    if (t.dim() != dim_) throw std::invalid_argument("translation dimension mismatch");
    std::vector<Coord> f = flat_;
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] += t[i % dim_];
      check_coord(f[i]);
    }
    return from_sorted_flat(dim_, std::move(f));
  }

  /// Per-axis minimum and maximum; requires a nonempty set.
  std::pair<std::vector<Coord>, std::vector<Coord>> bounds() const {
    if (empty()) throw std::invalid_argument("bounds of an empty set");
    std::vector<Coord> lo(row(0).begin(), row(0).end()), hi = lo;
    for (std::size_t i = 1; i < size(); ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        lo[j] = std::min(lo[j], flat_[i * dim_ + j]);
        hi[j] = std::max(hi[j], flat_[i * dim_ + j]);
      }
    return {lo, hi};
  }

  friend bool operator==(const LatticeSet& a, const LatticeSet& b) {
    return a.dim_ == b.dim_ && a.flat_ == b.flat_;
  }

  friend std::ostream& operator<<(std::ostream& os, const LatticeSet& s) {
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s.point(i);
    return os << '}';
  }

 private:
  void normalize() {
    const std::size_t n = size();
    if (dim_ == 1) {
      std::sort(flat_.begin(), flat_.end());
      flat_.erase(std::unique(flat_.begin(), flat_.end()), flat_.end());
      return;
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(flat_.begin() + a * dim_, flat_.begin() + (a + 1) * dim_,
                                          flat_.begin() + b * dim_, flat_.begin() + (b + 1) * dim_);
    };
    std::sort(idx.begin(), idx.end(), less);
    std::vector<Coord> out;
    out.reserve(flat_.size());
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t i = idx[k];
      if (k > 0 && std::equal(flat_.begin() + i * dim_, flat_.begin() + (i + 1) * dim_,
                              flat_.begin() + idx[k - 1] * dim_))
        continue;
      out.insert(out.end(), flat_.begin() + i * dim_, flat_.begin() + (i + 1) * dim_);
    }
    flat_ = std::move(out);
  }

  std::size_t dim_;
  std::vector<Coord> flat_;
};

inline LatticeSet set_union(const LatticeSet& a, const LatticeSet& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("union of sets of different dimension");
  std::vector<Coord> f = a.flat();
  f.insert(f.end(), b.flat().begin(), b.flat().end());
  return LatticeSet::from_flat(a.dim(), std::move(f));
}

inline LatticeSet set_difference(const LatticeSet& a, const LatticeSet& b) {
  std::vector<Coord> f;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b.contains(a.row(i))) f.insert(f.end(), a.row(i).begin(), a.row(i).end());
  return LatticeSet::from_sorted_flat(a.dim(), std::move(f));
}

}  // namespace sumstab
