#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sumstab/convex.hpp"
#include "sumstab/harness/families.hpp"
#include "sumstab/polytope.hpp"
#include "sumstab/simplex_family.hpp"

using namespace sumstab;

namespace {

LatticeSet line(std::initializer_list<Coord> xs) {
  std::vector<Point> pts;
  for (auto x : xs) pts.push_back(Point{x});
  return LatticeSet(1, pts);
}

RationalPoint q(std::initializer_list<long> xs) {
  RationalPoint p;
  for (auto x : xs) p.emplace_back(x);
  return p;
}

std::set<RationalPoint> vertex_set(const Polytope& p) { return {p.vertices().begin(), p.vertices().end()}; }

LatticeSet random_set(std::mt19937_64& rng, std::size_t k, Coord lo, Coord hi, std::size_t n) {
  std::uniform_int_distribution<Coord> c(lo, hi);
  std::vector<Coord> flat;
  for (std::size_t i = 0; i < n * k; ++i) flat.push_back(c(rng));
  return LatticeSet::from_flat(k, std::move(flat));
}

Simplex segment(long a, long b) { return {q({a}), q({b})}; }

// Every point of a fine grid over scale * (standard simplex) lies in some member.
bool covers_simplex(const std::vector<Simplex>& members, std::size_t d, long scale, long steps) {
  std::vector<Polytope> ps;
  for (const auto& m : members) ps.push_back(Polytope::hull_of(d, m));
  std::vector<long> c(d, 0);
  while (true) {
    long s = 0;
    for (auto x : c) s += x;
    if (s <= steps) {
      RationalPoint y;
      for (auto x : c) y.push_back(Rational(scale * x, steps));
      for (auto& v : y) v.canonicalize();
      if (std::none_of(ps.begin(), ps.end(), [&](const Polytope& p) { return p.contains(y); })) return false;
    }
    std::size_t j = 0;
    while (j < d && ++c[j] > steps) c[j++] = 0;
    if (j == d) return true;
  }
}

}  // namespace

TEST(ConvexHull, Examples) {
  const auto tri = convex_hull(LatticeSet(2, {Point{0, 0}, Point{3, 0}, Point{0, 3}}));
  EXPECT_EQ(vertex_set(tri), (std::set<RationalPoint>{q({0, 0}), q({3, 0}), q({0, 3})}));
  EXPECT_TRUE(tri.full_dimensional());
  EXPECT_EQ(tri.volume(), make_rational(9, 2));

  const auto seg = convex_hull(LatticeSet(2, {Point{0, 0}, Point{1, 0}, Point{2, 0}}));
  EXPECT_EQ(seg.affine_dim(), 1);
  EXPECT_EQ(vertex_set(seg), (std::set<RationalPoint>{q({0, 0}), q({2, 0})}));

  const auto dropped = convex_hull(LatticeSet(2, {Point{0, 0}, Point{3, 0}, Point{0, 3}, Point{1, 1}}));
  EXPECT_EQ(vertex_set(dropped), vertex_set(tri));
  EXPECT_EQ(convex_hull(LatticeSet(3, {Point{1, 2, 3}})).affine_dim(), 0);
  EXPECT_THROW(convex_hull(LatticeSet(2)), std::invalid_argument);
}

TEST(ConvexHull, MixedPolygon) {
  const auto p = convex_hull(LatticeSet(2, {Point{0, 0}, Point{0, 1}, Point{1, 0}, Point{1, 1}, Point{2, 0}}));
  EXPECT_EQ(p.volume(), make_rational(3, 2));
  EXPECT_EQ(p.vertices().size(), 4u);
  EXPECT_EQ(lattice_points(p).size(), 5u);
}

TEST(ConvexHull, UnitCubeAndTesseract) {
  const auto cube = Gap::box_at(Point{0, 0, 0}, {2, 2, 2}).enumerate();
  const auto p = convex_hull(cube);
  EXPECT_EQ(p.vertices().size(), 8u);
  EXPECT_EQ(p.facet_count(), 6u);
  EXPECT_EQ(p.volume(), 1);
  const auto t = convex_hull(Gap::box_at(Point{0, 0, 0, 0}, {3, 2, 2, 2}).enumerate());
  EXPECT_EQ(t.vertices().size(), 16u);
  EXPECT_EQ(t.facet_count(), 8u);
  EXPECT_EQ(t.volume(), 2);
}

TEST(ConvexHull, PlanarAreaMatchesShoelace) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_set(rng, 2, -7, 7, 3 + trial % 12);
    EXPECT_EQ(convex_hull(a).volume(), oracle::planar_hull_area(oracle::points(a)));
  }
}

TEST(ConvexHull, VerticesComeFromTheInputAndHullContainsIt) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + trial % 3;
    const auto a = random_set(rng, k, -4, 4, 2 + trial % 9);
    const auto p = convex_hull(a);
    for (const auto& v : p.vertices()) {
      std::vector<Coord> iv;
      for (const auto& x : v) iv.push_back(to_int64(x.get_num()));
      EXPECT_TRUE(a.contains(iv));
    }
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(p.contains(a.row(i)));
  }
}

TEST(LatticePoints, Examples) {
  const auto tri = convex_hull(LatticeSet(2, {Point{0, 0}, Point{3, 0}, Point{0, 3}}));
  EXPECT_EQ(lattice_points(tri).size(), 10u);
  const auto sq = convex_hull(Gap::box_at(Point{0, 0}, {2, 2}).enumerate());
  EXPECT_EQ(lattice_points(sq).size(), 4u);
  EXPECT_TRUE(lattice_points(sq.relative_interior()).empty());
}

TEST(LatticePoints, HalfOpenFacets) {
  auto sq = convex_hull(Gap::box_at(Point{0, 0}, {3, 3}).enumerate());
  sq.set_open(0);
  EXPECT_EQ(lattice_points(sq).size(), 6u);
  EXPECT_THROW(sq.set_open(99), std::out_of_range);
}

TEST(LatticePoints, MatchesBoundingBoxOracle) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const auto a = random_set(rng, k, -3, 4, 1 + trial % 7);
    EXPECT_EQ(lattice_hull(a), oracle::to_set(k, oracle::lattice_hull(a))) << a;
  }
}

TEST(Polytope, ScaledAndTranslated) {
  const auto tri = convex_hull(LatticeSet(2, {Point{0, 0}, Point{1, 0}, Point{0, 1}}));
  EXPECT_EQ(tri.scaled(4).volume(), 8);
  EXPECT_EQ(lattice_points(tri.scaled(make_rational(5, 2))).size(), 6u);
  EXPECT_EQ(vertex_set(tri.translated(q({2, -1}))), (std::set<RationalPoint>{q({2, -1}), q({3, -1}), q({2, 0})}));
  EXPECT_THROW(tri.scaled(0), std::invalid_argument);
}

TEST(Triangulate, VolumesAddUp) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 2 + trial % 2;
    const auto a = random_set(rng, k, 0, 5, 4 + trial % 8);
    const auto p = convex_hull(a);
    if (!p.full_dimensional()) continue;
    Rational total = 0;
    for (const auto& s : triangulate(p)) total += simplex_volume(s);
    EXPECT_EQ(total, p.volume());
  }
}

TEST(ConvexProgression, Examples) {
  const auto r = convex_progression(line({1, 3, 7, 9}));
  EXPECT_EQ(r.co_hat, line({1, 3, 5, 7, 9}));
  EXPECT_EQ(r.gap, 1);
  EXPECT_EQ(convex_progression(line({0, 1, 2, 3, 4})).gap, 0);
  // The degenerate family spans 1 + (2Z x Z), so co^ drops the column x = 0
  // that makes up co(A) \ A.
  const auto d = convex_progression(harness::gen_degenerate_family(2, 1, 3));
  EXPECT_EQ(d.co.size(), 10u);
  EXPECT_EQ(d.co.size() - 7, 3u);
  EXPECT_EQ(d.gap, 0);
}

TEST(ConvexProgression, EvenSquare) {
  const auto r = convex_progression(LatticeSet(2, {Point{0, 0}, Point{2, 0}, Point{0, 2}, Point{2, 2}}));
  EXPECT_EQ(r.gap, 0);
  EXPECT_EQ(r.co.size(), 9u);
}

TEST(VolumeCount, Examples) {
  const auto sq = convex_hull(Gap::box_at(Point{1, 1}, {4, 4}).enumerate());
  const auto r = volume_count_check(sq, Gap::box({4, 4}));
  EXPECT_EQ(r.volume, 9);
  EXPECT_EQ(r.count, 16);
  EXPECT_EQ(r.check.lhs, 7);
  EXPECT_EQ(r.check.rhs, 48);
  EXPECT_TRUE(r.check.holds);

  const auto pt = volume_count_check(convex_hull(LatticeSet(2, {Point{2, 2}})), Gap::box({4, 4}));
  EXPECT_EQ(pt.volume, 0);
  EXPECT_EQ(pt.count, 1);
  EXPECT_TRUE(pt.check.holds);

  const auto tri = convex_hull(LatticeSet(2, {Point{1, 1}, Point{5, 1}, Point{1, 5}}));
  const auto t = volume_count_check(tri, Gap::box({5, 5}));
  EXPECT_EQ(t.volume, 8);
  EXPECT_EQ(t.count, 15);
  EXPECT_EQ(t.check.rhs, 60);
  EXPECT_TRUE(t.check.holds);

  EXPECT_THROW(volume_count_check(tri, Gap::box({4, 4})), std::invalid_argument);
}

TEST(Straddle, Examples) {
  const auto one = boundary_straddle_count(line({1, 2, 3}), Point{1}, Gap::box({4, 3}));
  EXPECT_EQ(one.count, 2);
  EXPECT_TRUE(one.check.holds);
  const auto sq = Gap::box({3, 3}).enumerate();
  const auto two = boundary_straddle_count(sq, Point{1, 0}, Gap::box({3, 3, 3}));
  EXPECT_EQ(two.count, 6);
  EXPECT_THROW(boundary_straddle_count(sq, Point{0, 0}, Gap::box({3, 3, 3})), std::invalid_argument);
  EXPECT_THROW(boundary_straddle_count(sq, Point{2, 0}, Gap::box({3, 3, 3})), std::invalid_argument);
}

TEST(HyperplaneBox, MatchesDirectCount) {
  const Gap box = Gap::box({4, 5, 3});
  const auto pts = box.enumerate();
  for (const auto& n : {Point{1, 1, 0}, Point{2, -1, 3}, Point{0, 0, 1}, Point{3, 3, -2}})
    for (Coord off = -6; off <= 12; ++off) {
      std::int64_t direct = 0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        auto r = pts.row(i);
        if (n[0] * r[0] + n[1] * r[1] + n[2] * r[2] == off) ++direct;
      }
      const auto h = hyperplane_box_count(n, off, box);
      EXPECT_EQ(h.count, direct);
      EXPECT_EQ(h.check.holds, direct * 3 <= 60);
    }
  const auto diag = hyperplane_box_count(Point{1, 1}, 5, Gap::box({4, 4}));
  EXPECT_EQ(diag.count, 4);
  EXPECT_TRUE(diag.check.holds);
  EXPECT_THROW(hyperplane_box_count(Point{0, 0}, 1, Gap::box({4, 4})), std::invalid_argument);
}

TEST(Converse, Examples) {
  const Gap b33 = Gap::box({3, 3});
  const auto full = check_converse(b33.enumerate(), b33);
  EXPECT_EQ(full.lhs, -11);
  EXPECT_EQ(full.rhs, 288);
  EXPECT_TRUE(full.holds);
  const auto pair = check_converse(LatticeSet(2, {Point{1, 1}, Point{3, 3}}), b33);
  EXPECT_EQ(pair.lhs, -5);
  EXPECT_EQ(pair.rhs, 292);
  EXPECT_TRUE(pair.holds);
  EXPECT_TRUE(check_converse(LatticeSet(2, {Point{1, 2}}), Gap::box({2, 2})).holds);
}

TEST(TriangulateBoundary, Examples) {
  EXPECT_EQ(triangulate_boundary(Gap::box({2, 2}).enumerate()).size(), 4u);
  EXPECT_EQ(triangulate_boundary(LatticeSet(2, {Point{0, 0}, Point{1, 0}, Point{0, 1}})).size(), 3u);
  const LatticeSet oct(2, {Point{1, 0}, Point{2, 0}, Point{3, 1}, Point{3, 2}, Point{2, 3}, Point{1, 3}, Point{0, 2},
                           Point{0, 1}});
  EXPECT_EQ(triangulate_boundary(oct).size(), 8u);
  // A cube has 6 square facets, 2 triangles each.
  EXPECT_EQ(triangulate_boundary(Gap::box({2, 2, 2}).enumerate()).size(), 12u);
  EXPECT_THROW(triangulate_boundary(LatticeSet(2, {Point{0, 0}, Point{1, 1}})), std::invalid_argument);
}

TEST(SimplexFamily, OneDimensionalExamples) {
  const auto halves = simplex_family(segment(0, 4), 1, 0);
  ASSERT_EQ(halves.size(), 2u);
  EXPECT_EQ(halves[0], segment(0, 2));
  EXPECT_EQ(halves[1], segment(2, 4));
  const auto mid = simplex_family(segment(0, 4), 1, 1);
  ASSERT_EQ(mid.size(), 3u);
  EXPECT_EQ(mid[1], segment(1, 3));
  for (int j : {0, 1, 3}) EXPECT_EQ(simplex_family(segment(0, 4), 0, j), std::vector<Simplex>{segment(0, 4)});
}

TEST(SimplexFamily, MembersLieInsideT) {
  const Simplex t{q({0, 0}), q({4, 0}), q({1, 3})};
  const auto tp = Polytope::hull_of(2, t);
  for (const auto& m : simplex_family(t, 2, 2)) {
    EXPECT_EQ(simplex_volume(m), simplex_volume(t) / 16);
    for (const auto& v : m) EXPECT_TRUE(tp.contains(v));
  }
  EXPECT_THROW(simplex_family({q({0, 0}), q({1, 1}), q({2, 2})}, 1, 0), std::invalid_argument);
}

TEST(CoveringSearch, OneDimensional) {
  const auto t = segment(0, 4);
  const auto halves = covering_family_search(t, 1, 0);
  ASSERT_TRUE(halves.has_value());
  EXPECT_EQ(halves->members.size(), 2u);
  EXPECT_EQ(halves->total_volume, 4);
  for (int rounds : {2, 3}) {
    const auto quarters = covering_family_search(t, 2, rounds);
    ASSERT_TRUE(quarters.has_value());
    EXPECT_LE(quarters->total_volume, quarters->volume_bound);
    EXPECT_TRUE(covers_simplex(quarters->members, 1, 4, 256));
  }
  // Corners of [0,4] alone leave (1,3) uncovered at level 2.
  EXPECT_FALSE(covering_family_search(t, 2, 0).has_value());
}

TEST(CoveringSearch, TwoDimensional) {
  const Simplex t{q({0, 0}), q({1, 0}), q({0, 1})};
  EXPECT_FALSE(covering_family_search(t, 3, 0).has_value());
  EXPECT_FALSE(covering_family_search(t, 1, 0).has_value());
  const auto fam = covering_family_search(t, 3, 4);
  ASSERT_TRUE(fam.has_value());
  EXPECT_LE(fam->total_volume, fam->volume_bound);
  EXPECT_TRUE(covers_simplex(fam->members, 2, 1, 64));
}

TEST(WitnessShifts, SymmetricAndContainsDifferences) {
  const Simplex t{q({0}), q({4})};
  const auto w = witness_shifts(t, 1, 1);
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_TRUE(w.contains(std::vector<Coord>{-w.row(i)[0]}));
  // Offsets {0, 1/2, 1/4} scale to translations {0, ±1, ±2} of [0,4].
  for (Coord u : {-2, -1, 0, 1, 2}) EXPECT_TRUE(w.contains(std::vector<Coord>{u}));
}
