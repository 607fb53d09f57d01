#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

#include "bmolab/core.hpp"
#include "bmolab/csv.hpp"
#include "bmolab/digest.hpp"
#include "bmolab/parallel.hpp"
#include "bmolab/weights.hpp"
#include "oracles.hpp"

using namespace bmolab;

namespace {

GridFunction random_function(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(g.cell_count());
  for (double& x : v) x = d(rng);
  return GridFunction(g, std::move(v));
}

}  // namespace

TEST(Grid, RejectsBadShapes) {
  EXPECT_THROW(Grid(3, 1.0, 8), DomainError);
  EXPECT_THROW(Grid(1, 1.0, 12), DomainError);
  EXPECT_THROW(Grid(1, 0.0, 8), DomainError);
  EXPECT_THROW(Grid(2, 1.0, 4096), DomainError);
  const Grid g(2, 2.0, 8);
  EXPECT_EQ(g.cell_count(), 64u);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.25);
  EXPECT_DOUBLE_EQ(g.cell_volume(), 0.0625);
  EXPECT_EQ(g.levels(), 3u);
  for (std::size_t i = 0; i < g.cell_count(); ++i) EXPECT_EQ(g.ravel(g.unravel(i)), i);
}

TEST(GridFunction, RejectsNonFiniteAndMismatchedGrids) {
  const Grid g(1, 1.0, 4);
  EXPECT_THROW(GridFunction(g, {1, 2, NAN, 4}), DomainError);
  EXPECT_THROW(GridFunction(g, {1, 2, 3}), ConfigError);
  const GridFunction a = GridFunction::constant(g, 1.0);
  const GridFunction b = GridFunction::constant(Grid(1, 1.0, 8), 1.0);
  EXPECT_THROW(a + b, ConfigError);
}

TEST(Average, ConstantFunction) {
  const Grid g(2, 1.0, 8);
  const auto f = GridFunction::constant(g, 7.0);
  EXPECT_DOUBLE_EQ(average(f, {{2, 3}, 4}), 7.0);
}

TEST(Average, IdentityOnMidpoints) {
  const Grid g(1, 1.0, 8);
  const auto f = GridFunction::sample(g, [](const Point& x) { return x[0]; });
  EXPECT_NEAR(average(f, whole_grid(g)), 0.5, 1e-15);
}

TEST(Average, LeftHalfIndicator) {
  const Grid g(1, 1.0, 16);
  const auto f = GridFunction::sample(g, [](const Point& x) { return x[0] < 0.5 ? 1.0 : 0.0; });
  EXPECT_DOUBLE_EQ(average(f, whole_grid(g)), 0.5);
  EXPECT_DOUBLE_EQ(average(f, {{0, 0}, 8}), 1.0);
  EXPECT_DOUBLE_EQ(average(f, whole_grid(g)), oracle::mean(f, whole_grid(g)));
}

TEST(Average, OutsideGridIsDomainError) {
  const Grid g(1, 1.0, 8);
  const auto f = GridFunction::constant(g, 1.0);
  EXPECT_THROW(average(f, {{6, 0}, 4}), DomainError);
  EXPECT_THROW(average(f, {{0, 0}, 0}), DomainError);
}

TEST(Average, LinearAndMatchesOracle) {
  const Grid g(2, 1.0, 16);
  const auto f = random_function(g, 1);
  const auto h = random_function(g, 2);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t side = 1 + rng() % 16;
    const Cube q{{rng() % (17 - side), rng() % (17 - side)}, side};
    const double lhs = average(2.5 * f + (-1.5) * h, q);
    const double rhs = 2.5 * average(f, q) - 1.5 * average(h, q);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
    EXPECT_NEAR(average(f, q), oracle::mean(f, q), 1e-12);
  }
}

TEST(Average, DyadicParentIsMeanOfChildren) {
  const Grid g(2, 1.0, 32);
  const auto f = random_function(g, 4);
  const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
  for (const Cube& q : fam.cubes()) {
    if (q.side == 1) continue;
    const std::size_t s = q.side / 2;
    double sum = 0.0;
    for (std::size_t dy : {0u, 1u})
      for (std::size_t dx : {0u, 1u}) sum += average(f, {{q.anchor[0] + dx * s, q.anchor[1] + dy * s}, s});
    EXPECT_NEAR(average(f, q), sum / 4.0, 1e-12 * std::max(1.0, std::abs(sum)));
  }
}

TEST(WeightedMeasure, Examples) {
  const Grid g(2, 1.0, 8);
  EXPECT_NEAR(weighted_measure(unit_weight(g), {{0, 0}, 4}), 0.25, 1e-15);
  EXPECT_NEAR(weighted_measure(constant_weight(g, 2.0), {{0, 0}, 4}), 0.5, 1e-15);
  const Grid line(1, 1.0, 16);
  EXPECT_NEAR(weighted_measure(two_valued_weight(line, 1.0, 3.0), whole_grid(line)), 2.0, 1e-15);
}

TEST(WeightedMeasure, AdditiveOverPartitions) {
  const Grid g(2, 1.0, 16);
  const Weight w = make_power_weight(g, -0.5, {0.3, 0.7});
  const Cube q{{0, 0}, 16};
  double parts = 0.0;
  for (std::size_t y = 0; y < 16; y += 4)
    for (std::size_t x = 0; x < 16; x += 4) parts += weighted_measure(w, {{x, y}, 4});
  EXPECT_NEAR(weighted_measure(w, q), parts, 1e-12 * parts);
  EXPECT_NEAR(weighted_measure(w, q), oracle::measure(w.function(), q), 1e-12 * parts);
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate_cubes(Grid(1, 1.0, 4), FamilySpec::dyadic()).size(), 7u);
  EXPECT_EQ(enumerate_cubes(Grid(1, 1.0, 8), FamilySpec::sliding({2})).size(), 7u);
  EXPECT_EQ(enumerate_cubes(Grid(2, 1.0, 4), FamilySpec::dyadic()).size(), 21u);
  EXPECT_EQ(enumerate_cubes(Grid(1, 1.0, 8), FamilySpec::sliding_all()).size(), 36u);
  EXPECT_EQ(enumerate_cubes(Grid(1, 1.0, 8), FamilySpec::sliding({4}, 2)).size(), 3u);
}

TEST(Enumerate, EmptyOrOversizedSpecIsRejected) {
  const Grid g(1, 1.0, 8);
  EXPECT_THROW(enumerate_cubes(g, FamilySpec::sliding({})), ConfigError);
  EXPECT_ANY_THROW(enumerate_cubes(g, FamilySpec::sliding({16})));
  EXPECT_THROW(CubeFamily::of(g, {}), ConfigError);
  EXPECT_THROW(CubeFamily::of(g, {{{0, 0}, 2}, {{0, 0}, 2}}), ConfigError);
}

TEST(Enumerate, DyadicLevelsTileTheGrid) {
  for (int dim : {1, 2}) {
    const Grid g(dim, 1.0, 16);
    const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
    for (std::size_t side = 1; side <= 16; side *= 2) {
      std::vector<int> hits(g.cell_count(), 0);
      for (const Cube& q : fam.cubes())
        if (q.side == side) for_each_cell(g, q, [&](std::size_t i) { ++hits[i]; });
      for (int h : hits) EXPECT_EQ(h, 1);
    }
  }
}

TEST(Enumerate, OrderedBySideDescending) {
  const auto fam = enumerate_cubes(Grid(2, 1.0, 8), FamilySpec::sliding_all(2));
  for (std::size_t i = 1; i < fam.size(); ++i) EXPECT_GE(fam[i - 1].side, fam[i].side);
  EXPECT_EQ(fam.kind(), FamilyKind::sliding);
}

TEST(FamilySpec, ParseRoundTrip) {
  const auto s = FamilySpec::parse("sliding:sides=2,4,8;stride=2");
  EXPECT_EQ(s.kind, FamilyKind::sliding);
  EXPECT_EQ(s.window_sides, (std::vector<std::size_t>{2, 4, 8}));
  EXPECT_EQ(s.stride, 2u);
  EXPECT_EQ(FamilySpec::parse("dyadic").kind, FamilyKind::dyadic);
  EXPECT_THROW(FamilySpec::parse("hexagonal"), ConfigError);
}

TEST(CubeSums, MatchDirectSums) {
  const Grid g(2, 1.0, 16);
  const auto f = random_function(g, 9);
  const CubeSums sums(g, f.values());
  const auto fam = enumerate_cubes(g, FamilySpec::sliding_all(3));
  for (const Cube& q : fam.cubes()) {
    double direct = 0.0;
    for (auto i : oracle::cells(g, q)) direct += f[i];
    EXPECT_NEAR(sums.sum(q), direct, 1e-11);
  }
}

TEST(Csv, RoundTrip) {
  const Grid g(2, 3.0, 4);
  const auto f = random_function(g, 5);
  std::stringstream ss;
  write_csv(f, ss);
  const auto back = read_csv(ss);
  EXPECT_EQ(back.grid(), g);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(back[i], f[i]);
}

TEST(Csv, BadHeader) {
  std::stringstream ss("N,L\n1\n");
  EXPECT_THROW(read_csv(ss), ConfigError);
}

TEST(Digest, StableAndSensitive) {
  EXPECT_EQ(Digest().add("abc").hex(), Digest().add("abc").hex());
  EXPECT_NE(Digest().add("abc").hex(), Digest().add("abd").hex());
  EXPECT_EQ(Digest().hex(), "cbf29ce484222325");
}

TEST(Parallel, VisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_GE(worker_count(), 1u);
}

TEST(Parallel, ThreadCapFromEnvironment) {
  ::setenv("BMOLAB_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  ::setenv("BMOLAB_THREADS", "zero", 1);
  EXPECT_GE(worker_count(), 1u);
  ::unsetenv("BMOLAB_THREADS");
}
