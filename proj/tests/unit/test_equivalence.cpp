#include <gtest/gtest.h>

#include "bmolab/harness/corpus.hpp"
#include "bmolab/harness/equivalence.hpp"

using namespace bmolab;

TEST(EquivalenceSpec, ParseAndNorms) {
  const auto w = EquivalenceSpec::parse("weak_type:2");
  EXPECT_EQ(w.pairing, Pairing::weak_type);
  EXPECT_EQ(w.norms().first, BmoVariant::strong(1.0));
  EXPECT_EQ(w.norms().second, BmoVariant::weak(2.0));
  EXPECT_EQ(EquivalenceSpec::parse("centered:0.25").norms().second, BmoVariant::inf_centered(0.25));
  EXPECT_EQ(EquivalenceSpec::parse("sub_unit_power:0.5").norms().second, BmoVariant::strong(0.5));
  EXPECT_EQ(EquivalenceSpec::parse("power:4").descriptor(), "power:4");
  EXPECT_THROW(EquivalenceSpec::parse("power"), ConfigError);
  EXPECT_THROW(EquivalenceSpec::parse("mystery:2"), ConfigError);
  EXPECT_THROW(EquivalenceSpec::parse("power:x"), ConfigError);
  EXPECT_THROW(EquivalenceSpec::parse("centered:1.5"), DomainError);
}

TEST(Equivalence, SelfPairingIsExactlyOne) {
  const Grid g(1, 1.0, 64);
  const auto corpus = generate_corpus(g, {CorpusKind::mixed, 12, 2});
  const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
  const auto r = equivalence_experiment(EquivalenceSpec::parse("self:2"), unit_weight(g), corpus, "c", fam);
  EXPECT_EQ(r.min_ratio, 1.0);
  EXPECT_EQ(r.max_ratio, 1.0);
  EXPECT_EQ(r.members.size(), corpus.size());
}

TEST(Equivalence, ConstantsAreSkippedAndAllConstantIsDegenerate) {
  const Grid g(1, 1.0, 32);
  const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
  std::vector<GridFunction> corpus{GridFunction::constant(g, 2.0), log_exemplar(g, {0.5, 0.5})};
  const auto r = equivalence_experiment(EquivalenceSpec::parse("power:2"), unit_weight(g), corpus, "c", fam);
  EXPECT_EQ(r.members, std::vector<std::size_t>{1});
  corpus.pop_back();
  EXPECT_THROW(equivalence_experiment(EquivalenceSpec::parse("power:2"), unit_weight(g), corpus, "c", fam),
               DegenerateError);
}

TEST(Equivalence, BandsAreScaleInvariantAndBounded) {
  const Grid g(1, 1.0, 64);
  const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
  const auto corpus = generate_corpus(g, {CorpusKind::mixed, 15, 7});
  std::vector<GridFunction> scaled_corpus;
  for (const auto& f : corpus) scaled_corpus.push_back(-4.0 * f + 3.0);
  const Weight w = make_power_weight(g, -0.5, {0.5, 0.5});
  for (const char* text : {"weak_type:2", "sub_unit_power:0.5", "centered:0.5", "power:2"}) {
    const auto spec = EquivalenceSpec::parse(text);
    const auto a = equivalence_experiment(spec, w, corpus, "c", fam);
    const auto b = equivalence_experiment(spec, w, scaled_corpus, "c", fam);
    ASSERT_EQ(a.ratios.size(), b.ratios.size());
    for (std::size_t i = 0; i < a.ratios.size(); ++i) EXPECT_NEAR(a.ratios[i], b.ratios[i], 1e-9 * a.ratios[i]);
    EXPECT_GE(a.band(), 1.0);
    EXPECT_LE(a.band(), 25.0) << text;
    EXPECT_GT(a.a1, 1.0);
  }
}
