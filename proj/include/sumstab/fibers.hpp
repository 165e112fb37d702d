#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "sumstab/lattice.hpp"

namespace sumstab {

/// Projection away from the first coordinate, written in Z^{k-1}.
inline LatticeSet project_pi(const LatticeSet& a) {
  if (a.dim() < 2) throw std::invalid_argument("project_pi needs dimension >= 2");
  std::vector<Coord> flat;
  flat.reserve(a.size() * (a.dim() - 1));
  for (std::size_t i = 0; i < a.size(); ++i) flat.insert(flat.end(), a.row(i).begin() + 1, a.row(i).end());
  return LatticeSet::from_flat(a.dim() - 1, std::move(flat));
}

/// Rows R_x: projected point x -> sorted first coordinates of pi^{-1}(x) in A.
using RowDecomposition = std::map<Point, std::vector<Coord>>;

inline RowDecomposition rows(const LatticeSet& a) {
  if (a.dim() < 2) throw std::invalid_argument("rows needs dimension >= 2");
  RowDecomposition out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto r = a.row(i);
    out[Point(r.subspan(1))].push_back(r[0]);
  }
  // Lexicographic storage already sorts each row by its first coordinate.
  return out;
}

/// Slices H_y by the second coordinate.
inline std::map<Coord, LatticeSet> hyperplane_slices(const LatticeSet& a) {
  if (a.dim() < 2) throw std::invalid_argument("hyperplane_slices needs dimension >= 2");
  std::map<Coord, std::vector<Coord>> buckets;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto r = a.row(i);
    auto& b = buckets[r[1]];
    b.insert(b.end(), r.begin(), r.end());
  }
  std::map<Coord, LatticeSet> out;
  for (auto& [y, flat] : buckets) out.emplace(y, LatticeSet::from_sorted_flat(a.dim(), std::move(flat)));
  return out;
}

/// Down-compression along `axis`: every fiber parallel to the axis with m
/// points becomes {0,...,m-1} in that coordinate.
inline LatticeSet compress(const LatticeSet& a, std::size_t axis) {
  if (axis >= a.dim()) throw std::invalid_argument("compress axis out of range");
  std::map<std::vector<Coord>, Coord> counts;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<Coord> key(a.row(i).begin(), a.row(i).end());
    key[axis] = 0;
    ++counts[key];
  }
  std::vector<Coord> flat;
  flat.reserve(a.size() * a.dim());
  for (auto& [key, m] : counts) {
    for (Coord t = 0; t < m; ++t) {
      auto p = key;
      p[axis] = t;
      flat.insert(flat.end(), p.begin(), p.end());
    }
  }
  return LatticeSet::from_flat(a.dim(), std::move(flat));
}

/// Compresses along every axis until nothing moves; the result is a down-set.
inline LatticeSet compress_all(const LatticeSet& a) {
  LatticeSet cur = a;
  while (true) {
    LatticeSet next = cur;
    for (std::size_t axis = 0; axis < a.dim(); ++axis) next = compress(next, axis);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

}  // namespace sumstab
