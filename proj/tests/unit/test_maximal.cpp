#include <gtest/gtest.h>

#include <cmath>

#include "bmolab/harness/corpus.hpp"
#include "bmolab/maximal.hpp"
#include "oracles.hpp"

using namespace bmolab;

namespace {

struct Case {
  MaximalSpec spec;
  oracle::Kind kind;
};

const std::vector<Case>& cases() {
  static const std::vector<Case> all{
      {MaximalSpec::hl(), oracle::Kind::hl},
      {MaximalSpec::weighted(), oracle::Kind::weighted},
      {MaximalSpec::sharp(), oracle::Kind::sharp},
      {MaximalSpec::hl_delta(0.5), oracle::Kind::hl_delta},
      {MaximalSpec::sharp_delta(0.5), oracle::Kind::sharp_delta},
      {MaximalSpec::weighted_s(1.5), oracle::Kind::weighted_s},
  };
  return all;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(MaximalSpec, ParseAndValidate) {
  EXPECT_EQ(MaximalSpec::parse("sharp_delta:0.5").kind, MaximalKind::sharp_delta);
  EXPECT_EQ(MaximalSpec::parse("weighted_s:2").parameter, 2.0);
  EXPECT_THROW(MaximalSpec::parse("median"), ConfigError);
  EXPECT_THROW(MaximalSpec::weighted_s(1.0).validate(), DomainError);
  EXPECT_THROW(MaximalSpec::hl_delta(0.0).validate(), DomainError);
}

TEST(Maximal, ConstantFunction) {
  const Grid g(1, 1.0, 32);
  const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
  const auto f = GridFunction::constant(g, -3.0);
  const auto m = maximal(f, MaximalSpec::hl(), fam);
  const auto s = maximal(f, MaximalSpec::sharp(), fam);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_NEAR(m[i], 3.0, 1e-14);
    EXPECT_NEAR(s[i], 0.0, 1e-14);
  }
}

TEST(Maximal, IndicatorExamples) {
  const Grid g(1, 1.0, 32);
  const auto fam = enumerate_cubes(g, FamilySpec::sliding_all());
  const auto f = GridFunction::sample(g, [](const Point& x) { return x[0] >= 0.25 && x[0] < 0.5 ? 1.0 : 0.0; });
  const auto m = maximal(f, MaximalSpec::hl(), fam);
  for (std::size_t i = 8; i < 16; ++i) EXPECT_DOUBLE_EQ(m[i], 1.0);
  // Outside A the best window reaches from the cell to A: |A cap Q|/|Q|.
  EXPECT_NEAR(m[0], 8.0 / 16.0, 1e-15);
  EXPECT_NEAR(m[20], 8.0 / 13.0, 1e-15);
}

TEST(Maximal, DyadicSpikeMatchesExhaustiveEnumeration) {
  const Grid g(1, 1.0, 32);
  const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
  std::vector<double> v(32, 0.0);
  v[11] = 1.0;
  const auto m = maximal(GridFunction(g, v), MaximalSpec::hl(), fam);
  for (std::size_t x = 0; x < 32; ++x) {
    double expected = 0.0;
    for (std::size_t side = 1; side <= 32; side *= 2) {
      if (x / side == 11 / side) expected = std::max(expected, 1.0 / static_cast<double>(side));
    }
    EXPECT_DOUBLE_EQ(m[x], expected) << x;
  }
}

TEST(Maximal, AllKindsMatchOracleOnEveryPath) {
  for (int dim : {1, 2}) {
    const Grid g(dim, 1.0, dim == 1 ? 64 : 16);
    const Weight w = make_power_weight(g, -0.5, {0.3, 0.3});
    for (const FamilySpec& spec : {FamilySpec::dyadic(), FamilySpec::sliding({1, 2, 3, 5}, 1)}) {
      const auto fam = enumerate_cubes(g, spec);
      const std::vector<Cube> cubes(fam.cubes().begin(), fam.cubes().end());
      for (const auto& f : generate_corpus(g, {CorpusKind::mixed, 6, 21})) {
        for (const auto& c : cases()) {
          const Weight* wp = c.spec.needs_weight() ? &w : nullptr;
          const auto expected = oracle::maximal(f, c.kind, c.spec.parameter, &w.function(), cubes);
          std::vector<MaximalPath> paths{MaximalPath::naive, MaximalPath::scatter, MaximalPath::automatic};
          if (spec.kind == FamilyKind::dyadic) paths.push_back(MaximalPath::dyadic_tree);
          for (MaximalPath p : paths) {
            const auto got = maximal(f, c.spec, wp, fam, p);
            for (std::size_t i = 0; i < f.size(); ++i) ASSERT_LE(rel(got[i], expected[i]), 1e-12);
          }
        }
      }
    }
  }
}

TEST(Maximal, WeightPresenceIsChecked) {
  const Grid g(1, 1.0, 16);
  const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
  const auto f = GridFunction::constant(g, 1.0);
  const Weight w = unit_weight(g);
  EXPECT_THROW(maximal(f, MaximalSpec::weighted(), fam), ConfigError);
  EXPECT_THROW(maximal(f, MaximalSpec::hl(), &w, fam), ConfigError);
  EXPECT_THROW(maximal(f, MaximalSpec::hl(), enumerate_cubes(g, FamilySpec::sliding({2})),
                       MaximalPath::dyadic_tree),
               ConfigError);
}

TEST(Maximal, PointwiseProperties) {
  const Grid g(1, 1.0, 64);
  const auto dyadic = enumerate_cubes(g, FamilySpec::dyadic());
  const auto sliding = enumerate_cubes(g, FamilySpec::sliding_all());
  const Weight w = two_valued_weight(g, 1.0, 3.0);
  for (const auto& f : generate_corpus(g, {CorpusKind::mixed, 20, 8})) {
    const auto m = maximal(f, MaximalSpec::hl(), dyadic);
    const auto sharp = maximal(f, MaximalSpec::sharp(), dyadic);
    const auto mw = maximal(f, MaximalSpec::weighted(), &w, dyadic);
    const auto mws = maximal(f, MaximalSpec::weighted_s(2.0), &w, dyadic);
    const auto big = maximal(f, MaximalSpec::hl(), sliding);
    const auto abs_m = maximal(f.abs(), MaximalSpec::hl(), dyadic);
    const auto g2 = f.abs() + 0.5;
    const auto mg = maximal(g2, MaximalSpec::hl(), dyadic);
    const auto inf = maximal(f, MaximalSpec::sharp_inf(), dyadic);
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_LE(sharp[i], 2.0 * m[i] * (1 + 1e-12) + 1e-15);
      EXPECT_GE(mws[i], mw[i] * (1 - 1e-12));
      EXPECT_GE(big[i], m[i] * (1 - 1e-12));
      EXPECT_EQ(abs_m[i], m[i]);
      EXPECT_GE(mg[i], m[i]);
      EXPECT_LE(inf[i], sharp[i] * (1 + 1e-12) + 1e-15);
      EXPECT_GE(2.0 * inf[i] * (1 + 1e-12) + 1e-15, sharp[i]);
    }
  }
}

TEST(FeffermanStein, Examples) {
  const Grid g(1, 1.0, 64);
  const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
  const Weight u = unit_weight(g);
  const auto f = GridFunction::sample(g, [](const Point& x) { return x[0] < 0.5 ? 1.0 : 0.0; });
  const double r = fefferman_stein_ratio(f, u, 2.0, 0.5, fam);
  EXPECT_TRUE(std::isfinite(r));
  EXPECT_GE(r, 1.0);
  EXPECT_NEAR(fefferman_stein_ratio(2.0 * f, u, 2.0, 0.5, fam), r, 1e-12 * r);
  EXPECT_THROW(fefferman_stein_ratio(GridFunction::constant(g, 2.0), u, 2.0, 0.5, fam), UndefinedRatioError);
  EXPECT_THROW(fefferman_stein_ratio(GridFunction::constant(g, 0.0), u, 2.0, 0.5, fam), UndefinedRatioError);
}
