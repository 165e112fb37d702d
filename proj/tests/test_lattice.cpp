#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sumstab/fibers.hpp"
#include "sumstab/gap.hpp"
#include "sumstab/lattice.hpp"
#include "sumstab/sublattice.hpp"

using namespace sumstab;

namespace {

LatticeSet line(std::initializer_list<Coord> xs) {
  std::vector<Point> pts;
  for (auto x : xs) pts.push_back(Point{x});
  return LatticeSet(1, pts);
}

LatticeSet random_set(std::mt19937_64& rng, std::size_t k, Coord side, double density) {
  std::vector<Coord> flat;
  std::bernoulli_distribution keep(density);
  std::vector<Coord> x(k, 0);
  while (true) {
    if (keep(rng)) flat.insert(flat.end(), x.begin(), x.end());
    std::size_t j = 0;
    while (j < k && ++x[j] == side) x[j++] = 0;
    if (j == k) break;
  }
  if (flat.empty()) flat.assign(k, 0);
  return LatticeSet::from_flat(k, std::move(flat));
}

}  // namespace

TEST(LatticeSet, SortsAndDeduplicates) {
  LatticeSet a(2, {Point{1, 0}, Point{0, 1}, Point{1, 0}});
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.point(0), (Point{0, 1}));
  EXPECT_TRUE(a.contains(std::vector<Coord>{1, 0}));
  EXPECT_FALSE(a.contains(std::vector<Coord>{1, 1}));
}

TEST(LatticeSet, RejectsMixedDimensions) {
  EXPECT_THROW(LatticeSet(2, {Point{1, 0}, Point{0}}), std::invalid_argument);
}

TEST(LatticeSet, RejectsCoordinatesBeyondGuard) {
  EXPECT_THROW(check_coord(kCoordLimit + 1), std::overflow_error);
  EXPECT_NO_THROW(check_coord(-kCoordLimit));
}

TEST(LatticeSet, UnionDifferenceAndTranslate) {
  const auto a = line({0, 1, 2});
  const auto b = line({2, 3});
  EXPECT_EQ(set_union(a, b), line({0, 1, 2, 3}));
  EXPECT_EQ(set_difference(a, b), line({0, 1}));
  EXPECT_EQ(a.translated(Point{5}), line({5, 6, 7}));
  EXPECT_TRUE(line({1}).is_subset_of(a));
}

TEST(AffineSublattice, OddIntegers) {
  const auto lat = affine_sublattice(line({1, 3, 7, 9}));
  EXPECT_EQ(lat.rank(), 1u);
  EXPECT_EQ(lat.base()[0], 1);
  EXPECT_EQ(lat.basis()[0][0], 2);
  EXPECT_TRUE(lat.contains(Point{5}));
  EXPECT_FALSE(lat.contains(Point{4}));
}

TEST(AffineSublattice, EvenSquareLattice) {
  const auto lat = affine_sublattice(LatticeSet(2, {Point{0, 0}, Point{2, 0}, Point{0, 2}}));
  ASSERT_EQ(lat.rank(), 2u);
  EXPECT_EQ(lat.basis()[0], (IntRow{2, 0}));
  EXPECT_EQ(lat.basis()[1], (IntRow{0, 2}));
  EXPECT_EQ(lat.base(), (std::vector<Integer>{0, 0}));
}

TEST(AffineSublattice, SingletonHasRankZero) {
  const auto lat = affine_sublattice(LatticeSet(2, {Point{4, -1}}));
  EXPECT_EQ(lat.rank(), 0u);
  EXPECT_EQ(lat.base(), (std::vector<Integer>{4, -1}));
  EXPECT_TRUE(lat.contains(Point{4, -1}));
  EXPECT_FALSE(lat.contains(Point{4, 0}));
}

TEST(AffineSublattice, EmptyInputThrows) { EXPECT_THROW(affine_sublattice(LatticeSet(2)), std::invalid_argument); }

TEST(AffineSublattice, TranslatesCompareEqual) {
  const LatticeSet a(2, {Point{0, 0}, Point{3, 1}, Point{1, 2}});
  const auto t = a.translated(Point{7, -4});
  // Translating by a lattice vector keeps the lattice; by anything else moves its base.
  EXPECT_EQ(affine_sublattice(a), affine_sublattice(a.translated(Point{3, 1})));
  EXPECT_EQ(affine_sublattice(t).basis(), affine_sublattice(a).basis());
}

TEST(AffineSublattice, MembershipMatchesMinorOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + trial % 2;
    std::uniform_int_distribution<Coord> coord(-6, 6);
    std::vector<Point> pts;
    for (int i = 0; i < 4; ++i) {
      std::vector<Coord> p(k);
      for (auto& x : p) x = coord(rng) * (1 + trial % 3);
      pts.emplace_back(p);
    }
    const LatticeSet a(k, pts);
    const auto lat = affine_sublattice(a);
    if (lat.rank() < k) continue;
    for (int q = 0; q < 20; ++q) {
      std::vector<Coord> x(k);
      for (auto& c : x) c = coord(rng);
      EXPECT_EQ(lat.contains(x), oracle::in_affine_lattice(a, x));
    }
  }
}

TEST(HermiteNormalForm, CanonicalUpToRowOperations) {
  const IntMatrix m{{4, 6}, {2, 2}};
  const IntMatrix n{{6, 8}, {2, 2}};  // (6,8) = (4,6) + (2,2)
  EXPECT_EQ(hermite_normal_form(m), hermite_normal_form(n));
  const auto h = hermite_normal_form(m);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0], (IntRow{2, 0}));
  EXPECT_EQ(h[1], (IntRow{0, 2}));
}

TEST(HermiteNormalForm, DropsDependentRows) {
  const auto h = hermite_normal_form({{2, 4}, {1, 2}, {3, 6}});
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0], (IntRow{1, 2}));
}

TEST(Reduced, Examples) {
  EXPECT_TRUE(is_reduced(LatticeSet(2, {Point{0, 0}, Point{1, 0}, Point{0, 1}})));
  EXPECT_FALSE(is_reduced(LatticeSet(2, {Point{0, 0}, Point{2, 0}, Point{0, 2}})));
  EXPECT_FALSE(is_reduced(line({1, 3, 7, 9})));
}

TEST(ReduceCoordinates, OddIntegers) {
  const auto r = reduce_coordinates(line({1, 3, 7, 9}));
  EXPECT_EQ(r.set, line({0, 1, 3, 4}));
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.map.apply(std::vector<Coord>{3}), Point{7});
}

TEST(ReduceCoordinates, EvenTriangle) {
  const auto r = reduce_coordinates(LatticeSet(2, {Point{0, 0}, Point{2, 0}, Point{0, 2}}));
  EXPECT_EQ(r.set, LatticeSet(2, {Point{0, 0}, Point{1, 0}, Point{0, 1}}));
}

TEST(ReduceCoordinates, ReducedSetIsFixed) {
  const LatticeSet a(2, {Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{2, 3}});
  EXPECT_EQ(reduce_coordinates(a).set, a);
}

TEST(ReduceCoordinates, RoundTripsThroughTheMap) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + trial % 3;
    auto a = random_set(rng, k, 5, 0.3);
    std::vector<Coord> flat;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) flat.push_back(3 * a.row(i)[j] + static_cast<Coord>(j));
    a = LatticeSet::from_flat(k, flat);
    const auto r = reduce_coordinates(a);
    EXPECT_TRUE(is_reduced_in_span(r.set) || r.set.size() == 1);
    std::vector<Point> back;
    for (std::size_t i = 0; i < r.set.size(); ++i) back.push_back(r.map.apply(r.set.row(i)));
    EXPECT_EQ(LatticeSet(k, back), a);
  }
}

TEST(Gap, BoxIsProductOfOneToN) {
  const Gap b = Gap::box({2, 3});
  EXPECT_TRUE(b.is_box());
  EXPECT_EQ(b.nominal_size(), 6);
  const auto pts = b.enumerate();
  EXPECT_EQ(pts.size(), 6u);
  EXPECT_EQ(pts.point(0), (Point{1, 1}));
  EXPECT_EQ(pts.point(5), (Point{2, 3}));
}

TEST(Gap, ImproperProgressionCollapses) {
  const Gap g(Point{0}, {Point{1}, Point{2}}, {3, 2});
  EXPECT_FALSE(g.is_proper());
  EXPECT_LT(g.enumerate().size(), 6u);
  EXPECT_TRUE(Gap(Point{0}, {Point{1}, Point{3}}, {3, 2}).is_proper());
}

TEST(Fibers, ProjectionAndRows) {
  const LatticeSet a(2, {Point{0, 0}, Point{1, 0}, Point{0, 1}});
  EXPECT_EQ(project_pi(a), line({0, 1}));
  const auto rs = rows(a);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs.at(Point{0}), (std::vector<Coord>{0, 1}));
  EXPECT_EQ(rs.at(Point{1}), (std::vector<Coord>{0}));
  EXPECT_THROW(project_pi(line({1})), std::invalid_argument);
}

TEST(Fibers, RowsPartitionTheSet) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_set(rng, 2 + trial % 2, 5, 0.4);
    std::size_t total = 0;
    for (const auto& [x, r] : rows(a)) {
      EXPECT_FALSE(r.empty());
      total += r.size();
    }
    EXPECT_EQ(total, a.size());
  }
}

TEST(Fibers, BoxRowsHaveFullLength) {
  for (const auto& [x, r] : rows(Gap::box({4, 3}).enumerate())) EXPECT_EQ(r.size(), 4u);
}

TEST(Fibers, HyperplaneSlices) {
  const auto hs = hyperplane_slices(LatticeSet(2, {Point{0, 0}, Point{1, 0}, Point{0, 1}}));
  ASSERT_EQ(hs.size(), 2u);
  EXPECT_EQ(hs.at(0), LatticeSet(2, {Point{0, 0}, Point{1, 0}}));
  EXPECT_EQ(hs.at(1), LatticeSet(2, {Point{0, 1}}));
  const auto box = hyperplane_slices(Gap::box({2, 3}).enumerate());
  EXPECT_EQ(box.size(), 3u);
  for (const auto& [y, s] : box) EXPECT_EQ(s.size(), 2u);
}

TEST(Compress, Examples) {
  EXPECT_EQ(compress(LatticeSet(2, {Point{0, 0}, Point{1, 1}}), 0), LatticeSet(2, {Point{0, 0}, Point{0, 1}}));
  EXPECT_EQ(compress(line({0, 5, 9}), 0), line({0, 1, 2}));
  const auto down = LatticeSet(2, {Point{0, 0}, Point{1, 0}, Point{0, 1}});
  EXPECT_EQ(compress_all(down), down);
  EXPECT_THROW(compress(down, 2), std::invalid_argument);
}

TEST(Compress, IdempotentAndCardinalityPreserving) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const auto a = random_set(rng, k, 6, 0.35);
    for (std::size_t axis = 0; axis < k; ++axis) {
      const auto c = compress(a, axis);
      EXPECT_EQ(c.size(), a.size());
      EXPECT_EQ(compress(c, axis), c);
    }
  }
}

TEST(Compress, SumsetNeverGrows) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_set(rng, 2, 7, 0.3);
    const auto y = random_set(rng, 2, 7, 0.5);
    EXPECT_LE(oracle::sumset(compress_all(x), compress_all(y)).size(), oracle::sumset(x, y).size());
  }
}
