#pragma once

// Families S_{i,j}(T) of translates of 2^{-i} T inside a simplex T, the
// covering-family search over them, and the witness shift set W_T.
//
// Members are tracked by their offset in the affine frame of T: with
// vertices x_0..x_d and edges e_r = x_r - x_0, the member with offset o is
//   x_0 + sum_r o_r e_r + 2^{-i} (T - x_0).
// In that frame T is the standard simplex {y >= 0, sum y <= 1}.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "sumstab/lattice.hpp"
#include "sumstab/polytope.hpp"
#include "sumstab/rational.hpp"

namespace sumstab {

using Offset = std::vector<Rational>;

namespace detail {

inline void require_simplex(const Simplex& t) {
  if (t.empty()) throw std::invalid_argument("simplex has no vertices");
  const std::size_t d = t.size() - 1;
  for (const auto& v : t)
    if (v.size() != d) throw std::invalid_argument("simplex must have dim+1 vertices");
  if (d == 0 || sgn(simplex_volume(t)) == 0) throw std::invalid_argument("degenerate simplex");
}

inline Simplex realize(const Simplex& t, const Offset& o, int level) {
  const std::size_t d = t.size() - 1;
  const Rational s = pow2(-level);
  RationalPoint corner = t[0];
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t j = 0; j < d; ++j) corner[j] += o[r] * (t[r + 1][j] - t[0][j]);
  Simplex out;
  for (std::size_t v = 0; v <= d; ++v) {
    RationalPoint p = corner;
    for (std::size_t j = 0; j < d; ++j) p[j] += s * (t[v][j] - t[0][j]);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

/// Offsets (in the frame of T) of the members of S_{level,rounds}.
inline std::vector<Offset> simplex_family_offsets(std::size_t d, int level, int rounds, std::size_t cap = 20000) {
  if (level < 0 || rounds < 0) throw std::invalid_argument("simplex family levels must be >= 0");
  const Rational reach = 1 - pow2(-level);
  std::set<Offset> cur;
  cur.insert(Offset(d, 0));
  for (std::size_t r = 0; r < d; ++r) {
    Offset o(d, 0);
    o[r] = reach;
    cur.insert(o);
  }
  for (int j = 0; j < rounds; ++j) {
    std::vector<Offset> v(cur.begin(), cur.end());
    std::set<Offset> next(cur);
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b) {
        Offset m(d);
        for (std::size_t t = 0; t < d; ++t) {
          m[t] = (v[a][t] + v[b][t]) / 2;
        }
        next.insert(std::move(m));
        if (next.size() > cap) throw std::length_error("simplex family exceeds the configured cap");
      }
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

/// S_{level,rounds}(T): translates of 2^{-level} T contained in T.
inline std::vector<Simplex> simplex_family(const Simplex& t, int level, int rounds, std::size_t cap = 20000) {
  detail::require_simplex(t);
  std::vector<Simplex> out;
  for (const auto& o : simplex_family_offsets(t.size() - 1, level, rounds, cap))
    out.push_back(detail::realize(t, o, level));
  return out;
}

struct CoveringFamily {
  std::vector<Simplex> members;
  Rational total_volume;
  Rational volume_bound;  // 2^{level-1} |T|
};

namespace detail {

// Members in the frame of T are {y >= o, sum y <= sum o + s}. The
// arrangement of all their bounding hyperplanes splits T into cells on which
// membership is constant; one interior sample point per cell decides
// coverage exactly.
inline std::vector<Offset> arrangement_samples(const std::vector<Offset>& offs, const Rational& s, std::size_t d) {
  std::vector<std::vector<Rational>> cuts(d);
  std::vector<Rational> sums;
  for (std::size_t j = 0; j < d; ++j) cuts[j] = {0, 1};
  sums = {0, 1};
  for (const auto& o : offs) {
    Rational tot = 0;
    for (std::size_t j = 0; j < d; ++j) {
      cuts[j].push_back(o[j]);
      tot += o[j];
    }
    sums.push_back(tot + s);
  }
  for (auto& c : cuts) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());

  std::vector<Offset> samples;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    Offset lo(d), width(d);
    Rational lo_sum = 0, width_sum = 0;
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = cuts[j][idx[j]];
      width[j] = cuts[j][idx[j] + 1] - lo[j];
      lo_sum += lo[j];
      width_sum += width[j];
    }
    if (lo_sum < 1) {
      // Split the open box cell by the diagonal cuts crossing it.
      std::vector<Rational> breaks{lo_sum};
      for (const auto& c : sums)
        if (c > lo_sum && c < lo_sum + width_sum) breaks.push_back(c);
      breaks.push_back(lo_sum + width_sum);
      for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
        const Rational target = (breaks[b] + breaks[b + 1]) / 2;
        if (target >= 1) continue;  // outside T
        const Rational frac = (target - lo_sum) / width_sum;
        Offset p(d);
        for (std::size_t j = 0; j < d; ++j) p[j] = lo[j] + frac * width[j];
        samples.push_back(std::move(p));
      }
    }
    std::size_t j = 0;
    while (j < d && ++idx[j] + 1 == cuts[j].size()) idx[j++] = 0;
    if (j == d) break;
  }
  return samples;
}

inline bool member_contains(const Offset& o, const Rational& s, const Offset& y) {
  Rational ys = 0, os = 0;
  for (std::size_t j = 0; j < o.size(); ++j) {
    if (y[j] < o[j]) return false;
    ys += y[j];
    os += o[j];
  }
  return ys <= os + s;
}

}  // namespace detail

/// Greedy search for F ⊆ S_{level,rounds}(T) covering T with total volume
/// at most 2^{level-1} |T|. Returns nullopt when no such family is found.
inline std::optional<CoveringFamily> covering_family_search(const Simplex& t, int level, int rounds,
                                                            std::size_t cap = 20000) {
  detail::require_simplex(t);
  const std::size_t d = t.size() - 1;
  const auto offs = simplex_family_offsets(d, level, rounds, cap);
  const Rational s = pow2(-level);
  const auto samples = detail::arrangement_samples(offs, s, d);

  std::vector<std::vector<std::size_t>> covers(offs.size());
  std::vector<int> hit(samples.size(), 0);
  for (std::size_t m = 0; m < offs.size(); ++m)
    for (std::size_t p = 0; p < samples.size(); ++p)
      if (detail::member_contains(offs[m], s, samples[p])) {
        covers[m].push_back(p);
        hit[p] = 1;
      }
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return std::nullopt;

  std::vector<bool> covered(samples.size(), false);
  std::size_t remaining = samples.size();
  std::vector<std::size_t> chosen;
  while (remaining > 0) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t m = 0; m < offs.size(); ++m) {
      std::size_t gain = 0;
      for (auto p : covers[m]) gain += covered[p] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = m;
      }
    }
    chosen.push_back(best);
    for (auto p : covers[best])
      if (!covered[p]) {
        covered[p] = true;
        --remaining;
      }
  }
  // Drop members made redundant by later picks.
  for (std::size_t i = chosen.size(); i-- > 0;) {
    std::vector<int> count(samples.size(), 0);
    for (std::size_t c = 0; c < chosen.size(); ++c)
      if (c != i)
        for (auto p : covers[chosen[c]]) ++count[p];
    if (std::find(count.begin(), count.end(), 0) == count.end()) chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(i));
  }

  const Rational tvol = simplex_volume(t);
  CoveringFamily fam;
  fam.volume_bound = pow2(level - 1) * tvol;
  fam.total_volume = Rational(static_cast<unsigned long>(chosen.size())) * pow2(-level * static_cast<int>(d)) * tvol;
  if (fam.total_volume > fam.volume_bound) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  for (auto m : chosen) fam.members.push_back(detail::realize(t, offs[m], level));
  return fam;
}

/// Witness shifts W_T: the union over translation vectors u between members
/// of S_{level,rounds}(T) of ±(floor(u) + {0,1}^d). T must have integer vertices.
inline LatticeSet witness_shifts(const Simplex& t, int level, int rounds, std::size_t cap = 20000) {
  detail::require_simplex(t);
  const std::size_t d = t.size() - 1;
  const auto offs = simplex_family_offsets(d, level, rounds, cap);
  std::set<std::vector<Rational>> us;
  for (const auto& a : offs)
    for (const auto& b : offs) {
      std::vector<Rational> u(d, 0);
      for (std::size_t r = 0; r < d; ++r) {
        const Rational diff = b[r] - a[r];
        for (std::size_t j = 0; j < d; ++j) u[j] += diff * (t[r + 1][j] - t[0][j]);
      }
      us.insert(std::move(u));
    }
  std::vector<Coord> flat;
  for (const auto& u : us) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
      for (int sign : {1, -1}) {
        for (std::size_t j = 0; j < d; ++j) {
          const Coord w = to_int64(floor_of(u[j])) + static_cast<Coord>((mask >> j) & 1);
          flat.push_back(sign * w);
        }
      }
    }
  }
  return LatticeSet::from_flat(d, std::move(flat));
}

}  // namespace sumstab
