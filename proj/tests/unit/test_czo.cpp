#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <tuple>

#include "bmolab/czo.hpp"
#include "bmolab/harness/corpus.hpp"
#include "oracles.hpp"

using namespace bmolab;

namespace {

GridFunction random_function(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(g.cell_count());
  for (double& x : v) x = d(rng);
  return GridFunction(g, std::move(v));
}

double scale_of(const GridFunction& f) { return std::max(1e-300, f.max_abs()); }

}  // namespace

TEST(Kernel, PresetsAndErrors) {
  EXPECT_EQ(kernel_from_preset("odd1d", 1).name, "odd1d");
  EXPECT_EQ(kernel_from_preset("riesz2d", 2).dim, 2);
  EXPECT_DOUBLE_EQ(kernel_from_preset("ialpha:alpha=1", 1).alpha, 1.0);
  EXPECT_THROW(kernel_from_preset("odd1d", 2), ConfigError);
  EXPECT_THROW(kernel_from_preset("ialpha:alpha=abc", 1), ConfigError);
  EXPECT_THROW(kernel_from_preset("ialpha:alpha=3", 1), DomainError);
  EXPECT_THROW(kernel_from_preset("heat", 1), ConfigError);
}

TEST(Kernel, HomogeneityAndDeclaredConstants) {
  for (const auto& k : {kernel_ialpha(1, 1.0), kernel_ialpha(2, 1.5), kernel_odd1d(), kernel_riesz2d()}) {
    EXPECT_LE(homogeneity_error(k, 2000, 3), 1e-10) << k.name;
    const KernelCheck c = verify_kernel(k, 20000, 5);
    EXPECT_TRUE(c.passes) << k.name << " size " << c.size_quotient << " reg " << c.regularity_quotient;
    EXPECT_GT(c.size_quotient, 0.0);
    EXPECT_GT(c.regularity_quotient, 0.0);
  }
  EXPECT_LE(verify_kernel(kernel_ialpha(1, 0.5), 5000, 1).size_quotient, 1.0 + 1e-12);
}

TEST(Kernel, ScaledKernelScalesQuotients) {
  const auto k = kernel_odd1d();
  const auto base = verify_kernel(k, 3000, 7);
  const auto tripled = verify_kernel(scaled(k, 3.0), 3000, 7);
  EXPECT_NEAR(tripled.size_quotient, 3.0 * base.size_quotient, 1e-12 * tripled.size_quotient);
  EXPECT_NEAR(tripled.regularity_quotient, 3.0 * base.regularity_quotient, 1e-9 * tripled.regularity_quotient);
}

TEST(Bilinear, MatchesDirectDoubleSum) {
  for (const auto& [k, dim, n] : {std::tuple{kernel_ialpha(1, 1.0), 1, 32}, std::tuple{kernel_odd1d(), 1, 32},
                                  std::tuple{kernel_riesz2d(), 2, 8}, std::tuple{kernel_ialpha(2, 1.0), 2, 8}}) {
    const Grid g(dim, 1.0, static_cast<std::size_t>(n));
    const auto f1 = random_function(g, 1);
    const auto f2 = random_function(g, 2);
    const BilinearOperator op(k, g);
    const auto mine = eval_bilinear(op, f1, f2);
    const auto ref = oracle::bilinear(k, f1, f2);
    EXPECT_LE(oracle::max_abs_diff(mine, ref), 1e-12 * scale_of(ref)) << k.name;
  }
}

TEST(Bilinear, TableAndDirectEvaluationAgree) {
  const Grid g(1, 1.0, 32);
  const BilinearOperator op(kernel_odd1d(), g);
  ASSERT_TRUE(op.tabulated());
  for (std::size_t x : {0u, 7u, 31u})
    for (std::size_t y1 : {0u, 7u, 20u})
      for (std::size_t y2 : {0u, 7u, 31u}) {
        if (x == y1 && x == y2) {
          EXPECT_EQ(op.weight(x, y1, y2), 0.0);
          continue;
        }
        const auto px = g.midpoint(x), p1 = g.midpoint(y1), p2 = g.midpoint(y2);
        EXPECT_NEAR(op.weight(x, y1, y2), kernel_odd1d()({px[0] - p1[0], 0}, {px[0] - p2[0], 0}), 1e-9);
      }
}

TEST(Bilinear, IalphaFarFieldAsymptotics) {
  // f1 = f2 = indicator of a small cube at distance d: T ~ |Q|^2 / (2d).
  const Grid g(1, 1.0, 32);
  const auto k = kernel_ialpha(1, 1.0);
  std::vector<double> v(32, 0.0);
  v[0] = v[1] = 1.0;
  const GridFunction chi(g, v);
  const auto t = eval_bilinear(k, chi, chi);
  const double side = 2.0 / 32.0;
  for (std::size_t x : {20u, 25u, 31u}) {
    const double d = g.midpoint(x)[0] - side / 2.0;
    const double approx = side * side / (2.0 * d);
    EXPECT_LE(std::abs(t[x] - approx) / approx, side / d) << x;
  }
}

TEST(Bilinear, BilinearityAndZeroInput) {
  const Grid g(1, 1.0, 32);
  const BilinearOperator op(kernel_odd1d(), g);
  const auto f1 = random_function(g, 3), f2 = random_function(g, 4), h = random_function(g, 5);
  const auto zero = eval_bilinear(op, f1, GridFunction::constant(g, 0.0));
  EXPECT_EQ(zero.max_abs(), 0.0);
  const auto a = eval_bilinear(op, 2.0 * f1 + h, f2);
  const auto b = 2.0 * eval_bilinear(op, f1, f2) + eval_bilinear(op, h, f2);
  EXPECT_LE(oracle::max_abs_diff(a, b), 1e-12 * scale_of(a));
  const auto c = eval_bilinear(op, f1, -3.0 * f2 + h);
  const auto d = -3.0 * eval_bilinear(op, f1, f2) + eval_bilinear(op, f1, h);
  EXPECT_LE(oracle::max_abs_diff(c, d), 1e-12 * scale_of(c));
}

TEST(Bilinear, DimensionMismatchIsConfigError) {
  EXPECT_THROW(BilinearOperator(kernel_riesz2d(), Grid(1, 1.0, 8)), ConfigError);
}

TEST(Bilinear, PeriodicTranslationCovariance) {
  for (int dim : {1, 2}) {
    const std::size_t n = dim == 1 ? 32 : 8;
    const Grid g(dim, 1.0, n);
    const BilinearOperator op(dim == 1 ? kernel_odd1d() : kernel_riesz2d(), g, Boundary::periodic);
    const auto f1 = random_function(g, 6), f2 = random_function(g, 7);
    auto shift = [&](const GridFunction& f, std::size_t k) {
      std::vector<double> v(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) {
        auto c = g.unravel(i);
        c[0] = (c[0] + k) % n;
        v[g.ravel(c)] = f[i];
      }
      return GridFunction(g, std::move(v));
    };
    const auto lhs = eval_bilinear(op, shift(f1, 3), shift(f2, 3));
    const auto rhs = shift(eval_bilinear(op, f1, f2), 3);
    EXPECT_LE(oracle::max_abs_diff(lhs, rhs), 1e-12 * scale_of(rhs));
  }
}

TEST(Commutator, ConstantSymbolVanishes) {
  const Grid g(1, 1.0, 32);
  const BilinearOperator op(kernel_odd1d(), g);
  const auto b = GridFunction::constant(g, 2.5);
  const auto f1 = random_function(g, 8), f2 = random_function(g, 9);
  const double scale = eval_bilinear(op, f1, f2).max_abs() * 2.5 * 2.5;
  for (auto slot : {CommutatorSlot::first, CommutatorSlot::second, CommutatorSlot::iterated}) {
    for (auto form : {CommutatorForm::expanded, CommutatorForm::difference}) {
      EXPECT_LE(commutator(slot, b, op, f1, f2, form).max_abs(), 1e-12 * scale);
    }
  }
}

TEST(Commutator, LinearInSymbol) {
  const Grid g(1, 1.0, 32);
  const BilinearOperator op(kernel_odd1d(), g);
  const auto b1 = random_function(g, 10), b2 = random_function(g, 11);
  const auto f1 = random_function(g, 12), f2 = random_function(g, 13);
  for (auto slot : {CommutatorSlot::first, CommutatorSlot::second}) {
    const auto lhs = commutator(slot, b1 + b2, op, f1, f2);
    const auto rhs = commutator(slot, b1, op, f1, f2) + commutator(slot, b2, op, f1, f2);
    EXPECT_LE(oracle::max_abs_diff(lhs, rhs), 1e-12 * scale_of(lhs));
  }
}

TEST(Commutator, FormsAgreeAndMatchOracles) {
  const Grid g(1, 1.0, 16);
  const auto k = kernel_odd1d();
  const BilinearOperator op(k, g);
  const auto b = log_exemplar(g, {0.4, 0.5});
  const auto f1 = random_function(g, 14), f2 = random_function(g, 15);
  const auto first = commutator(CommutatorSlot::first, b, op, f1, f2);
  EXPECT_LE(oracle::max_abs_diff(first, oracle::first_commutator(k, b, f1, f2)), 1e-12 * scale_of(first));
  const auto nested = oracle::nested_iterated(k, b, f1, f2);
  for (auto form : {CommutatorForm::expanded, CommutatorForm::difference}) {
    const auto it = commutator(CommutatorSlot::iterated, b, op, f1, f2, form);
    EXPECT_LE(oracle::max_abs_diff(it, nested), 1e-12 * scale_of(nested));
    for (auto slot : {CommutatorSlot::first, CommutatorSlot::second}) {
      EXPECT_LE(oracle::max_abs_diff(commutator(slot, b, op, f1, f2, form),
                                     commutator(slot, b, op, f1, f2, CommutatorForm::expanded)),
                1e-12 * scale_of(first));
    }
  }
}

TEST(Commutator, SymmetricKernelSwapsSlots) {
  const Grid g(1, 1.0, 32);
  const BilinearOperator op(kernel_ialpha(1, 1.0), g);
  const auto b = random_function(g, 16), f = random_function(g, 17);
  const auto a = commutator(CommutatorSlot::first, b, op, f, f);
  const auto c = commutator(CommutatorSlot::second, b, op, f, f);
  EXPECT_LE(oracle::max_abs_diff(a, c), 1e-12 * scale_of(a));
}

TEST(Commutator, RestrictedEvaluationMatchesFull) {
  const Grid g(1, 1.0, 32);
  const BilinearOperator op(kernel_odd1d(), g);
  const auto b = random_function(g, 18);
  std::vector<double> v1(32, 0.0), v2(32, 0.0);
  std::vector<std::size_t> s1{2, 3, 4}, s2{10, 11};
  std::vector<std::complex<double>> c1, c2;
  for (auto i : s1) {
    v1[i] = 0.5 + static_cast<double>(i);
    c1.emplace_back(v1[i], 0.0);
  }
  for (auto i : s2) {
    v2[i] = 1.0 - static_cast<double>(i);
    c2.emplace_back(v2[i], 0.0);
  }
  const std::vector<std::size_t> out{0, 5, 20, 31};
  for (auto slot : {CommutatorSlot::first, CommutatorSlot::second, CommutatorSlot::iterated}) {
    const auto full = commutator(slot, b, op, GridFunction(g, v1), GridFunction(g, v2));
    const auto part = commutator_on(slot, b, op, s1, c1, s2, c2, out);
    for (std::size_t k = 0; k < out.size(); ++k) {
      EXPECT_NEAR(part[k].real(), full[out[k]], 1e-12 * scale_of(full));
      EXPECT_EQ(part[k].imag(), 0.0);
    }
  }
}

TEST(Commutator, SlotParsing) {
  EXPECT_EQ(parse_commutator_slot("iterated"), CommutatorSlot::iterated);
  EXPECT_EQ(to_string(CommutatorSlot::second), "second");
  EXPECT_THROW(parse_commutator_slot("third"), ConfigError);
}
