#include "bmolab/harness/opnorm.hpp"

#include <cmath>

#include "bmolab/harness/corpus.hpp"
#include "bmolab/norms.hpp"

namespace bmolab {

std::string_view to_string(ProbeOperator op) {
  switch (op) {
    case ProbeOperator::plain: return "plain";
    case ProbeOperator::first: return "first";
    case ProbeOperator::second: return "second";
    case ProbeOperator::iterated: return "iterated";
  }
  return "unknown";
}

ProbeOperator parse_probe_operator(std::string_view text) {
  if (text == "plain") return ProbeOperator::plain;
  if (text == "first") return ProbeOperator::first;
  if (text == "second") return ProbeOperator::second;
  if (text == "iterated") return ProbeOperator::iterated;
  throw ConfigError("unknown operator '" + std::string(text) + "'");
}

std::string_view to_string(NormTarget t) { return t == NormTarget::weak ? "weak" : "strong"; }

NormTarget parse_norm_target(std::string_view text) {
  if (text == "strong") return NormTarget::strong;
  if (text == "weak") return NormTarget::weak;
  throw ConfigError("unknown norm target '" + std::string(text) + "'");
}

int OpnormSpec::weight_power() const noexcept {
  switch (op) {
    case ProbeOperator::plain: return 0;
    case ProbeOperator::iterated: return 2;
    default: return 1;
  }
}

namespace {

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

GridFunction box_indicator(const Grid& grid, const Point& lo, double side) {
  const int dim = grid.dim();
  return GridFunction::sample(grid, [&](const Point& x) {
    for (int a = 0; a < dim; ++a) {
      const auto k = static_cast<std::size_t>(a);
      const double t = (x[k] - grid.origin()[k]) / grid.side();
      if (t < lo[k] || t >= lo[k] + side) return 0.0;
    }
    return 1.0;
  });
}

GridFunction rademacher(const Grid& grid, std::mt19937_64& rng, std::size_t level) {
  const std::size_t blocks = std::size_t{1} << level;
  const std::size_t count = grid.dim() == 1 ? blocks : blocks * blocks;
  std::vector<double> signs(count);
  for (double& s : signs) s = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  const int dim = grid.dim();
  return GridFunction::sample(grid, [&](const Point& x) {
    auto block = [&](std::size_t k) {
      const double t = (x[k] - grid.origin()[k]) / grid.side();
      return std::min(blocks - 1, static_cast<std::size_t>(t * static_cast<double>(blocks)));
    };
    const std::size_t i = dim == 1 ? block(0) : block(0) + blocks * block(1);
    return signs[i];
  });
}

GridFunction nonzero_or_cell(GridFunction f) {
  if (f.max_abs() > 0.0) return f;
  // A probe finer than the grid vanishes; fall back to the first cell.
  std::vector<double> v(f.size(), 0.0);
  v[0] = 1.0;
  return GridFunction(f.grid(), std::move(v));
}

}  // namespace

std::pair<GridFunction, GridFunction> probe_pair(const Grid& grid, std::uint64_t seed,
                                                 std::size_t index) {
  auto rng = member_rng(seed, index);
  const int dim = grid.dim();
  auto corner = [&](double side) {
    return Point{uniform(rng, 0.0, 1.0 - side), dim == 1 ? 0.0 : uniform(rng, 0.0, 1.0 - side)};
  };
  switch (index % 3) {
    case 0: {
      static constexpr double sides[] = {1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0};
      const double s1 = sides[std::uniform_int_distribution<int>(0, 2)(rng)];
      const double s2 = sides[std::uniform_int_distribution<int>(0, 2)(rng)];
      const Point c1 = corner(s1);
      const Point c2 = corner(s2);
      return {nonzero_or_cell(box_indicator(grid, c1, s1)), nonzero_or_cell(box_indicator(grid, c2, s2))};
    }
    case 1: {
      const auto level = static_cast<std::size_t>(std::uniform_int_distribution<int>(2, 5)(rng));
      GridFunction f1 = rademacher(grid, rng, level);
      GridFunction f2 = rademacher(grid, rng, level);
      return {std::move(f1), std::move(f2)};
    }
    default: {
      const double r1 = uniform(rng, 0.03, 0.25);
      const double r2 = uniform(rng, 0.03, 0.25);
      const Point c1{uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0)};
      const Point c2{uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0)};
      return {nonzero_or_cell(bump(grid, c1, r1)), nonzero_or_cell(bump(grid, c2, r2))};
    }
  }
}

OpnormResult opnorm_lower_bound(const BilinearOperator& op, const GridFunction* b, const Weight& w,
                                const OpnormSpec& spec) {
  if (!(spec.p1 > 0.0 && spec.p2 > 0.0 && spec.p > 0.0)) throw ConfigError("exponents must be positive");
  if (std::abs(1.0 / spec.p - 1.0 / spec.p1 - 1.0 / spec.p2) > 1e-12) {
    throw ConfigError("exponents must satisfy 1/p = 1/p1 + 1/p2");
  }
  if (spec.trials == 0) throw ConfigError("opnorm needs at least one trial");
  if (spec.op != ProbeOperator::plain && b == nullptr) {
    throw ConfigError("commutator probes need a symbol b");
  }
  require_same_grid(op.grid(), w.grid(), "opnorm");
  const Grid& grid = op.grid();
  const int m = spec.weight_power();
  const GridFunction divisor = w.function().map([m](double v) { return std::pow(v, -m); });

  OpnormResult out;
  for (std::size_t t = 0; t < spec.trials; ++t) {
    const auto [f1, f2] = probe_pair(grid, spec.seed, t);
    GridFunction result = GridFunction::constant(grid, 0.0);
    switch (spec.op) {
      case ProbeOperator::plain: result = eval_bilinear(op, f1, f2); break;
      case ProbeOperator::first:
        result = commutator(CommutatorSlot::first, *b, op, f1, f2, CommutatorForm::difference);
        break;
      case ProbeOperator::second:
        result = commutator(CommutatorSlot::second, *b, op, f1, f2, CommutatorForm::difference);
        break;
      case ProbeOperator::iterated:
        result = commutator(CommutatorSlot::iterated, *b, op, f1, f2, CommutatorForm::difference);
        break;
    }
    const GridFunction scaled_out = result * divisor;
    const double num = spec.target == NormTarget::weak ? weak_lp_norm(scaled_out, w, spec.p)
                                                       : lp_norm(scaled_out, w, spec.p);
    const double den = lp_norm(f1, w, spec.p1) * lp_norm(f2, w, spec.p2);
    const double ratio = num / den;
    out.ratios.push_back(ratio);
    if (ratio > out.bound) {
      out.bound = ratio;
      out.best_trial = t;
    }
    out.running.push_back(out.bound);
  }
  return out;
}

}  // namespace bmolab
