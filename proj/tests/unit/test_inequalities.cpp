#include <gtest/gtest.h>

#include <cmath>

#include "bmolab/harness/corpus.hpp"
#include "bmolab/harness/inequalities.hpp"
#include "oracles.hpp"

using namespace bmolab;

TEST(Lemma1, ConstantValues) {
  EXPECT_DOUBLE_EQ(lemma1_constant(2.0, 4.0), 2.0);
  EXPECT_NEAR(lemma1_constant(1.5, 3.0), 2.0, 1e-15);
  EXPECT_NEAR(lemma1_constant(2.0, 3.0), 2.0 * std::pow(2.0, 1.0 / 3.0), 1e-15);
  EXPECT_THROW(lemma1_constant(1.0, 2.0), DomainError);
  EXPECT_THROW(lemma1_constant(3.0, 2.0), DomainError);
  EXPECT_THROW(lemma1_constant(2.0, INFINITY), DomainError);
}

TEST(Lemma1, HoldsAcrossCorpusWeightsAndPairs) {
  const Grid g(1, 1.0, 64);
  const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
  const auto corpus = generate_corpus(g, {CorpusKind::mixed, 24, 3});
  for (const Weight& w : {unit_weight(g), two_valued_weight(g, 1.0, 3.0), make_power_weight(g, -0.5, {0.4, 0.4})}) {
    for (const auto& [q1, q2] : {std::pair{2.0, 4.0}, std::pair{1.5, 3.0}, std::pair{3.0, 6.0}}) {
      for (const auto& f : corpus) {
        const auto r = check_lemma1(f, w, q1, q2, fam);
        EXPECT_TRUE(r.passes) << r.lhs << " > " << r.rhs;
        EXPECT_DOUBLE_EQ(r.rhs, r.constant * r.weak.value);
      }
    }
  }
}

TEST(Lemma1, StrongSideMatchesOracle) {
  const Grid g(1, 1.0, 32);
  const auto fam = enumerate_cubes(g, FamilySpec::sliding_all());
  const std::vector<Cube> cubes(fam.cubes().begin(), fam.cubes().end());
  const Weight w = make_power_weight(g, -0.5, {0.3, 0.3});
  for (const auto& f : generate_corpus(g, {CorpusKind::mixed, 6, 12})) {
    const auto r = check_lemma1(f, w, 2.0, 4.0, fam);
    const double strong = oracle::strong_bmo(f, w.function(), 2.0, cubes);
    const double weak = oracle::weak_bmo(f, w.function(), 4.0, cubes);
    EXPECT_NEAR(r.lhs, strong, 1e-12 * std::max(1.0, strong));
    EXPECT_NEAR(r.weak.value, weak, 1e-12 * std::max(1.0, weak));
  }
}

TEST(SharpBound, ConstantSymbolIsDegenerate) {
  const Grid g(1, 1.0, 32);
  const BilinearOperator op(kernel_odd1d(), g);
  const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
  const auto f = bump(g, {0.3, 0.5}, 0.2);
  EXPECT_THROW(check_pointwise_sharp_bound(GridFunction::constant(g, 1.0), unit_weight(g), op, f, f, 1.5,
                                           CommutatorSlot::first, fam),
               DegenerateError);
  EXPECT_THROW(check_pointwise_sharp_bound(log_exemplar(g, {0.5, 0.5}), unit_weight(g), op, f, f, 1.0,
                                           CommutatorSlot::first, fam),
               DomainError);
}

TEST(SharpBound, FiniteConstantsAndScaleInvariance) {
  const Grid g(1, 1.0, 32);
  const BilinearOperator op(kernel_odd1d(), g);
  const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
  const Weight w = make_power_weight(g, -0.3, {0.5, 0.5});
  const auto b = log_exemplar(g, {0.6, 0.5});
  const auto f1 = bump(g, {0.3, 0.5}, 0.2);
  const auto f2 = bump(g, {0.7, 0.5}, 0.15);
  for (auto slot : {CommutatorSlot::first, CommutatorSlot::second, CommutatorSlot::iterated}) {
    const auto r = check_pointwise_sharp_bound(b, w, op, f1, f2, 1.5, slot, fam);
    EXPECT_EQ(r.hard_failures, 0u);
    EXPECT_GT(r.compared, 0u);
    EXPECT_TRUE(std::isfinite(r.constant));
    EXPECT_GT(r.constant, 0.0);
    // b -> 2b + 1 and f1 -> 3 f1 leave the ratio unchanged.
    const auto s = check_pointwise_sharp_bound(2.0 * b + 1.0, w, op, 3.0 * f1, f2, 1.5, slot, fam);
    EXPECT_NEAR(s.constant, r.constant, 1e-9 * r.constant) << to_string(slot);
  }
}
