#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "sumstab/fibers.hpp"
#include "sumstab/gap.hpp"
#include "sumstab/lattice.hpp"
#include "sumstab/rational.hpp"

namespace sumstab {

enum class SumsetBackend { Auto, Hash, SortedMerge, Bitset };

/// Bounding-box volume up to which the dense bitset backend is used.
inline constexpr std::uint64_t kBitsetVolumeLimit = std::uint64_t{1} << 26;

namespace detail {

struct FlatRowHash {
  std::size_t dim;
  const std::vector<Coord>* store;
  std::size_t operator()(std::size_t idx) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t j = 0; j < dim; ++j) {
      h ^= static_cast<std::uint64_t>((*store)[idx * dim + j]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct FlatRowEq {
  std::size_t dim;
  const std::vector<Coord>* store;
  bool operator()(std::size_t a, std::size_t b) const noexcept {
    return std::equal(store->begin() + a * dim, store->begin() + (a + 1) * dim, store->begin() + b * dim);
  }
};

inline LatticeSet sum_hash(const LatticeSet& a, const LatticeSet& c) {
  const std::size_t k = a.dim();
  std::vector<Coord> store;
  store.reserve((a.size() + c.size()) * k);
  std::unordered_set<std::size_t, FlatRowHash, FlatRowEq> seen(a.size() + c.size(), FlatRowHash{k, &store},
                                                                FlatRowEq{k, &store});
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      const std::size_t idx = store.size() / k;
      for (std::size_t t = 0; t < k; ++t) store.push_back(a.row(i)[t] + c.row(j)[t]);
      if (!seen.insert(idx).second) store.resize(idx * k);
    }
  }
  return LatticeSet::from_flat(k, std::move(store));
}

// Each translate a + C is already sorted, so the sum is a running merge.
inline LatticeSet sum_sorted_merge(const LatticeSet& a, const LatticeSet& c) {
  const std::size_t k = a.dim();
  auto less = [k](const Coord* x, const Coord* y) { return std::lexicographical_compare(x, x + k, y, y + k); };
  std::vector<Coord> acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<Coord> shifted(c.flat());
    for (std::size_t t = 0; t < shifted.size(); ++t) shifted[t] += a.row(i)[t % k];
    std::vector<Coord> merged;
    merged.reserve(acc.size() + shifted.size());
    std::size_t p = 0, q = 0;
    const std::size_t np = acc.size() / k, nq = shifted.size() / k;
    auto push = [&](const Coord* row) {
      if (merged.size() >= k && std::equal(row, row + k, merged.end() - static_cast<std::ptrdiff_t>(k))) return;
      merged.insert(merged.end(), row, row + k);
    };
    while (p < np || q < nq) {
      if (q == nq || (p < np && less(acc.data() + p * k, shifted.data() + q * k)))
        push(acc.data() + (p++) * k);
      else
        push(shifted.data() + (q++) * k);
    }
    acc = std::move(merged);
  }
  return LatticeSet::from_sorted_flat(k, std::move(acc));
}

inline std::uint64_t sum_box_volume(const LatticeSet& a, const LatticeSet& c) {
  auto [alo, ahi] = a.bounds();
  auto [clo, chi] = c.bounds();
  long double vol = 1;
  std::uint64_t v = 1;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const auto ext = static_cast<std::uint64_t>((ahi[j] - alo[j]) + (chi[j] - clo[j]) + 1);
    vol *= static_cast<long double>(ext);
    if (vol > static_cast<long double>(kBitsetVolumeLimit) * 4) return UINT64_MAX;
    v *= ext;
  }
  return v;
}

inline LatticeSet sum_bitset(const LatticeSet& a, const LatticeSet& c) {
  const std::size_t k = a.dim();
  auto [alo, ahi] = a.bounds();
  auto [clo, chi] = c.bounds();
  std::vector<std::uint64_t> ext(k), stride(k);
  for (std::size_t j = 0; j < k; ++j)
    ext[j] = static_cast<std::uint64_t>((ahi[j] - alo[j]) + (chi[j] - clo[j]) + 1);
  // Coordinate 0 most significant, so increasing index is lexicographic order.
  std::uint64_t s = 1;
  for (std::size_t j = k; j-- > 0;) {
    stride[j] = s;
    s *= ext[j];
  }
  const std::uint64_t volume = s;
  auto offsets = [&](const LatticeSet& x, const std::vector<Coord>& lo) {
    std::vector<std::uint64_t> off(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::uint64_t o = 0;
      for (std::size_t j = 0; j < k; ++j) o += static_cast<std::uint64_t>(x.row(i)[j] - lo[j]) * stride[j];
      off[i] = o;
    }
    return off;
  };
  const auto oa = offsets(a, alo);
  const auto oc = offsets(c, clo);
  std::vector<std::uint64_t> bits((volume + 63) / 64, 0);
  for (std::uint64_t x : oa)
    for (std::uint64_t y : oc) {
      const std::uint64_t idx = x + y;
      bits[idx >> 6] |= std::uint64_t{1} << (idx & 63);
    }
  std::vector<Coord> flat;
  for (std::uint64_t w = 0; w < bits.size(); ++w) {
    std::uint64_t word = bits[w];
    while (word) {
      const int b = __builtin_ctzll(word);
      word &= word - 1;
      std::uint64_t idx = (w << 6) + static_cast<std::uint64_t>(b);
      for (std::size_t j = 0; j < k; ++j) {
        flat.push_back(alo[j] + clo[j] + static_cast<Coord>(idx / stride[j]));
        idx %= stride[j];
      }
    }
  }
  return LatticeSet::from_sorted_flat(k, std::move(flat));
}

}  // namespace detail

/// The Minkowski sum A + C.
inline LatticeSet minkowski_sum(const LatticeSet& a, const LatticeSet& c,
                                SumsetBackend backend = SumsetBackend::Auto) {
  if (a.dim() != c.dim()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  if (a.empty() || c.empty()) return LatticeSet(a.dim());
  switch (backend) {
    case SumsetBackend::Hash:
      return detail::sum_hash(a, c);
    case SumsetBackend::SortedMerge:
      return detail::sum_sorted_merge(a, c);
    case SumsetBackend::Bitset:
      if (detail::sum_box_volume(a, c) > kBitsetVolumeLimit)
        throw std::length_error("bitset backend: bounding box of A+C exceeds 2^26");
      return detail::sum_bitset(a, c);
    case SumsetBackend::Auto:
      break;
  }
  if (detail::sum_box_volume(a, c) <= kBitsetVolumeLimit) return detail::sum_bitset(a, c);
  return detail::sum_hash(a, c);
}

struct DoublingReport {
  std::int64_t card_a = 0;
  std::int64_t card_sum = 0;
  std::int64_t deficit = 0;  // |A+A| - 2^k |A|
  Rational normalized_delta;  // deficit / |A|
};

/// d_k(A) = |A+A| - 2^k |A|.
inline DoublingReport doubling_deficit(const LatticeSet& a) {
  if (a.empty()) throw std::invalid_argument("doubling deficit of the empty set is undefined");
  DoublingReport r;
  r.card_a = static_cast<std::int64_t>(a.size());
  r.card_sum = static_cast<std::int64_t>(minkowski_sum(a, a).size());
  r.deficit = r.card_sum - (std::int64_t{1} << a.dim()) * r.card_a;
  r.normalized_delta = Rational(static_cast<long>(r.deficit), static_cast<unsigned long>(r.card_a));
  r.normalized_delta.canonicalize();
  return r;
}

/// X(+)Y = (X + min Y) u (Y + max X); empty if either side is empty.
/// Inputs are sorted, duplicate-free coordinate lists.
inline std::vector<Coord> plus_1d(const std::vector<Coord>& x, const std::vector<Coord>& y) {
  if (x.empty() || y.empty()) return {};
  const Coord min_y = y.front(), max_x = x.back();
  std::vector<Coord> out;
  out.reserve(x.size() + y.size());
  for (Coord a : x) out.push_back(a + min_y);
  for (Coord b : y) out.push_back(b + max_x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline LatticeSet plus_1d(const LatticeSet& x, const LatticeSet& y) {
  if (x.dim() != 1 || y.dim() != 1) throw std::invalid_argument("plus_1d needs one-dimensional sets");
  return LatticeSet::from_sorted_flat(1, plus_1d(x.flat(), y.flat()));
}

/// A(+)A: the union over shifts v in {0} x {0,1}^{k-1} of the row sums
/// R_x (+) R_{x+v}, placed on the projected point 2x + v.
inline LatticeSet plus_structured(const LatticeSet& a) {
  if (a.dim() < 2) throw std::invalid_argument("plus_structured needs dimension >= 2 (use plus_1d)");
  const std::size_t k = a.dim();
  const auto rs = rows(a);
  std::vector<Coord> flat;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k - 1)); ++mask) {
    for (const auto& [x, rx] : rs) {
      std::vector<Coord> shifted = x.vec();
      for (std::size_t j = 0; j + 1 < k; ++j) shifted[j] += static_cast<Coord>((mask >> j) & 1);
      auto it = rs.find(Point(shifted));
      if (it == rs.end()) continue;
      for (Coord t : plus_1d(rx, it->second)) {
        flat.push_back(t);
        for (std::size_t j = 0; j + 1 < k; ++j) flat.push_back(x[j] + shifted[j]);
      }
    }
  }
  return LatticeSet::from_flat(k, std::move(flat));
}

struct ThicknessEstimate {
  std::int64_t count = 0;  // number of parallel hyperplanes used
  Point normal;            // primitive normal achieving count
  std::int64_t exhaustive_up_to = 0;
};

namespace detail {

// Primitive integer vectors in [-bound, bound]^k whose first nonzero entry is positive.
inline std::vector<std::vector<Coord>> primitive_normals(std::size_t k, Coord bound) {
  std::vector<std::vector<Coord>> out;
  std::vector<Coord> v(k, -bound);
  while (true) {
    Coord g = 0;
    std::size_t first = k;
    for (std::size_t j = 0; j < k; ++j) {
      g = std::gcd(g, v[j]);
      if (first == k && v[j] != 0) first = j;
    }
    if (g == 1 && first < k && v[first] > 0) out.push_back(v);
    std::size_t j = k;
    while (j-- > 0) {
      if (v[j] < bound) {
        ++v[j];
        break;
      }
      v[j] = -bound;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace detail

/// Fewest parallel hyperplanes covering A over primitive normals with
/// coordinates in [-bound, bound]. An upper bound on the thickness.
inline ThicknessEstimate thickness_upper(const LatticeSet& a, Coord bound = 5) {
  if (bound < 1) throw std::invalid_argument("thickness bound must be >= 1");
  if (a.empty()) throw std::invalid_argument("thickness of an empty set");
  ThicknessEstimate best;
  best.count = -1;
  best.exhaustive_up_to = bound;
  std::vector<Coord> vals(a.size());
  for (const auto& n : detail::primitive_normals(a.dim(), bound)) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      Coord s = 0;
      for (std::size_t j = 0; j < a.dim(); ++j) s += n[j] * a.row(i)[j];
      vals[i] = s;
    }
    std::sort(vals.begin(), vals.end());
    const auto m = static_cast<std::int64_t>(std::unique(vals.begin(), vals.end()) - vals.begin());
    if (best.count < 0 || m < best.count) {
      best.count = m;
      best.normal = Point(n);
    }
  }
  return best;
}

/// |X1+X2| >= 2^k min(|X1|,|X2|) - 2^{2k} min{n_i}^{-1} |B| for X1, X2 in a box B.
inline BoundCheck box_lower_bound_check(const LatticeSet& x1, const LatticeSet& x2, const Gap& box) {
  if (!box.is_box()) throw std::invalid_argument("box_lower_bound_check needs an axis-aligned box");
  if (x1.dim() != box.dim() || x2.dim() != box.dim()) throw std::invalid_argument("dimension mismatch");
  for (const auto* x : {&x1, &x2})
    for (std::size_t i = 0; i < x->size(); ++i)
      if (!box.box_contains(x->row(i))) throw std::invalid_argument("set is not contained in the box");
  const int k = static_cast<int>(box.dim());
  Rational lhs(static_cast<unsigned long>(minkowski_sum(x1, x2).size()));
  Rational smaller(static_cast<unsigned long>(std::min(x1.size(), x2.size())));
  Rational rhs = pow2(k) * smaller -
                 pow2(2 * k) * Rational(box.nominal_size()) / Rational(to_integer(box.min_length()));
  return check_ge(std::move(lhs), std::move(rhs));
}

}  // namespace sumstab
