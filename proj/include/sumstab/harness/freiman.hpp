#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sumstab/convex.hpp"
#include "sumstab/lattice.hpp"
#include "sumstab/sumset.hpp"

namespace sumstab::harness {

struct FreimanCheck {
  bool hypothesis = false;  // d_1(A) <= |A| - 4
  std::int64_t d1 = 0;
  std::int64_t gap = 0;
  bool conclusion_holds = true;  // gap <= d_1(A) + 1 whenever the hypothesis holds
};

inline FreimanCheck check_freiman(const LatticeSet& a) {
  if (a.dim() != 1) throw std::invalid_argument("check_freiman expects a 1-dimensional set");
  if (a.empty()) throw std::invalid_argument("check_freiman of an empty set");
  FreimanCheck r;
  r.d1 = doubling_deficit(a).deficit;
  r.gap = convex_progression(a).gap;
  r.hypothesis = r.d1 <= static_cast<std::int64_t>(a.size()) - 4;
  r.conclusion_holds = !r.hypothesis || r.gap <= r.d1 + 1;
  return r;
}

struct FreimanEnumeration {
  std::uint64_t sets = 0;             // all A with {0, N} ⊆ A ⊆ {0..N}
  std::uint64_t canonical_sets = 0;   // those with gcd(A) = 1
  std::uint64_t hypothesis_sets = 0;  // sets satisfying the hypothesis
  std::uint64_t violations = 0;
  std::vector<LatticeSet> violating;  // first few counterexamples
};

/// Exhaustive sweep over A with {0, N} ⊆ A ⊆ {0..N}. Sets with gcd > 1 are
/// swept too and agree with their reduced copy; canonical_sets counts each
/// class once.
inline FreimanEnumeration enumerate_freiman(int n, int cap = 16) {
  if (n < 0) throw std::invalid_argument("enumerate_freiman needs N >= 0");
  if (n > cap) throw std::length_error("enumerate_freiman: N exceeds the configured cap");
  FreimanEnumeration r;
  const std::uint32_t ends = (1u << n) | 1u;
  const std::uint32_t inner = n >= 2 ? (1u << (n - 1)) : 1u;
  for (std::uint32_t m = 0; m < inner; ++m) {
    const std::uint32_t mask = ends | (n >= 2 ? m << 1 : 0u);
    ++r.sets;
    int g = 0;
    for (int x = 0; x <= n; ++x)
      if (mask >> x & 1) g = std::gcd(g, x);
    if (g <= 1) ++r.canonical_sets;
    std::vector<Coord> flat;
    for (int x = 0; x <= n; ++x)
      if (mask >> x & 1) flat.push_back(x);
    LatticeSet a = LatticeSet::from_sorted_flat(1, std::move(flat));
    const FreimanCheck c = check_freiman(a);
    if (!c.hypothesis) continue;
    ++r.hypothesis_sets;
    if (!c.conclusion_holds) {
      ++r.violations;
      if (r.violating.size() < 4) r.violating.push_back(std::move(a));
    }
  }
  return r;
}

}  // namespace sumstab::harness
