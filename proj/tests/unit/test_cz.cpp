#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bmolab/harness/corpus.hpp"
#include "bmolab/harness/cz.hpp"
#include "bmolab/norms.hpp"

using namespace bmolab;

TEST(CZ, SingleSpikeSelectsOneCube) {
  const Grid g(1, 1.0, 64);
  std::vector<double> v(64, 0.0);
  v[5] = 64.0;
  const GridFunction f(g, v);
  const Weight w = unit_weight(g);
  // Cube averages of |f|^{1/2} around the spike are 8/side; only side 4 first exceeds e^{1/2}.
  const auto cz = cz_decompose(f, w, whole_grid(g), std::numbers::e, 0.5);
  EXPECT_EQ(cz.center, 0.0);
  ASSERT_EQ(cz.selected.size(), 1u);
  EXPECT_EQ(cz.selected[0], (Cube{{4, 0}, 4}));
  EXPECT_DOUBLE_EQ(cz.selected_averages[0], 2.0);
  EXPECT_TRUE(validate_cz(f, w, cz).passes());
}

TEST(CZ, ConstantFunctionSelectsNothing) {
  const Grid g(2, 1.0, 16);
  const auto f = GridFunction::constant(g, 3.0);
  const auto cz = cz_decompose(f, unit_weight(g), whole_grid(g), 4.0, 0.3);
  EXPECT_TRUE(cz.selected.empty());
  EXPECT_TRUE(validate_cz(f, unit_weight(g), cz).passes());
}

TEST(CZ, RejectsBadInputs) {
  const Grid g(1, 1.0, 16);
  const Weight w = unit_weight(g);
  std::vector<double> v(16, 0.0);
  for (std::size_t i = 0; i < 8; ++i) v[i] = 100.0;
  const GridFunction f(g, v);
  EXPECT_THROW(cz_decompose(f, w, {{4, 0}, 8}, 4.0, 0.5), DomainError);
  EXPECT_THROW(cz_decompose(f, w, {{0, 0}, 6}, 4.0, 0.5), DomainError);
  EXPECT_THROW(cz_decompose(f, w, whole_grid(g), 1.0, 0.5), DomainError);
  EXPECT_THROW(cz_decompose(f, w, whole_grid(g), 4.0, 1.0), DomainError);
  // Half the mass at 100 with center 0 or 100: average 100^{1/2}/2 = 5 > 2.
  EXPECT_THROW(cz_decompose(f, w, whole_grid(g), 4.0, 0.5), DomainError);
}

TEST(CZ, NormalizedCorpusSatisfiesAllProperties) {
  for (int dim : {1, 2}) {
    const Grid g(dim, 1.0, dim == 1 ? 64 : 16);
    const auto fam = enumerate_cubes(g, FamilySpec::dyadic());
    for (const Weight& w : {unit_weight(g), make_power_weight(g, -0.5, {0.5, 0.5})}) {
      for (const auto& raw : generate_corpus(g, {CorpusKind::mixed, 15, 4})) {
        for (double r : {0.3, 0.7}) {
          const auto f = normalize_bmo_r(raw, w, r, fam);
          if (!raw.is_constant()) EXPECT_NEAR(bmo_norm(f, w, BmoVariant::inf_centered(r), fam).value, 1.0, 1e-9);
          for (double s : {std::numbers::e, 4.0}) {
            const auto cz = cz_decompose(f, w, whole_grid(g), s, r);
            const auto check = validate_cz(f, w, cz);
            EXPECT_TRUE(check.disjoint && check.contained && check.lower && check.complement);
            EXPECT_LE(check.worst_doubling, 1.0 + 1e-12);
            // The fixed 2^dim cap needs mu(parent) <= 2^dim mu(child), true for constant weights.
            if (w.descriptor() == "const") EXPECT_TRUE(check.passes()) << "dim " << dim << " r " << r << " s " << s;
            ASSERT_EQ(cz.selected.size(), cz.selected_averages.size());
          }
        }
      }
    }
  }
}

TEST(CZ, ValidatorCatchesBrokenDecompositions) {
  const Grid g(1, 1.0, 64);
  std::vector<double> v(64, 0.0);
  v[5] = 64.0;
  const GridFunction f(g, v);
  const Weight w = unit_weight(g);
  auto cz = cz_decompose(f, w, whole_grid(g), std::numbers::e, 0.5);
  auto overlap = cz;
  overlap.selected.push_back({{4, 0}, 2});
  EXPECT_FALSE(validate_cz(f, w, overlap).disjoint);
  auto missing = cz;
  missing.selected.clear();
  EXPECT_FALSE(validate_cz(f, w, missing).complement);
  auto low = cz;
  low.selected.push_back({{32, 0}, 8});
  EXPECT_FALSE(validate_cz(f, w, low).lower);
}
