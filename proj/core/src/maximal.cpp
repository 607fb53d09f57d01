#include "bmolab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "bmolab/norms.hpp"
#include "bmolab/parallel.hpp"

namespace bmolab {

MaximalSpec MaximalSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  double param = 1.0;
  if (colon != std::string_view::npos) {
    try {
      param = std::stod(std::string(text.substr(colon + 1)));
    } catch (const std::exception&) {
      throw ConfigError("bad maximal parameter in '" + std::string(text) + "'");
    }
  }
  MaximalSpec s;
  if (kind == "hl") s = hl();
  else if (kind == "weighted") s = weighted();
  else if (kind == "sharp") s = sharp();
  else if (kind == "sharp_inf") s = sharp_inf();
  else if (kind == "hl_delta") s = hl_delta(param);
  else if (kind == "sharp_delta") s = sharp_delta(param);
  else if (kind == "weighted_s") s = weighted_s(param);
  else throw ConfigError("unknown maximal kind '" + std::string(kind) + "'");
  s.validate();
  return s;
}

void MaximalSpec::validate() const {
  const double x = parameter;
  switch (kind) {
    case MaximalKind::hl_delta:
    case MaximalKind::sharp_delta:
      if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("maximal delta must be positive");
      break;
    case MaximalKind::weighted_s:
      if (!(x > 1.0) || !std::isfinite(x)) throw DomainError("maximal s must exceed 1");
      break;
    default: break;
  }
}

std::string MaximalSpec::descriptor() const {
  std::ostringstream os;
  switch (kind) {
    case MaximalKind::hl: return "hl";
    case MaximalKind::weighted: return "weighted";
    case MaximalKind::sharp: return "sharp";
    case MaximalKind::sharp_inf: return "sharp_inf";
    case MaximalKind::hl_delta: os << "hl_delta:" << parameter; break;
    case MaximalKind::sharp_delta: os << "sharp_delta:" << parameter; break;
    case MaximalKind::weighted_s: os << "weighted_s:" << parameter; break;
  }
  return os.str();
}

namespace {

enum class Reduce { mean, weighted_mean, oscillation, median_oscillation };

struct Plan {
  Reduce reduce;
  double inner_power;  // applied to |f| before averaging
  double outer_power;  // applied to the max at the end
};

Plan plan_for(const MaximalSpec& s) {
  switch (s.kind) {
    case MaximalKind::hl: return {Reduce::mean, 1.0, 1.0};
    case MaximalKind::weighted: return {Reduce::weighted_mean, 1.0, 1.0};
    case MaximalKind::sharp: return {Reduce::oscillation, 1.0, 1.0};
    case MaximalKind::sharp_inf: return {Reduce::median_oscillation, 1.0, 1.0};
    case MaximalKind::hl_delta: return {Reduce::mean, s.parameter, 1.0 / s.parameter};
    case MaximalKind::sharp_delta: return {Reduce::oscillation, s.parameter, 1.0 / s.parameter};
    case MaximalKind::weighted_s: return {Reduce::weighted_mean, s.parameter, 1.0 / s.parameter};
  }
  return {Reduce::mean, 1.0, 1.0};
}

class CubeEvaluator {
 public:
  CubeEvaluator(const Grid& grid, std::vector<double> g, const Weight* w, Reduce reduce)
      : grid_(grid), g_(std::move(g)), w_(w), reduce_(reduce) {}

  double operator()(const Cube& q) const {
    switch (reduce_) {
      case Reduce::mean: {
        long double s = 0.0L;
        for_each_cell(grid_, q, [&](std::size_t i) { s += g_[i]; });
        return static_cast<double>(s / static_cast<long double>(cube_cell_count(grid_, q)));
      }
      case Reduce::weighted_mean: {
        long double s = 0.0L;
        long double m = 0.0L;
        for_each_cell(grid_, q, [&](std::size_t i) {
          s += g_[i] * (*w_)[i];
          m += (*w_)[i];
        });
        return static_cast<double>(s / m);
      }
      case Reduce::oscillation: {
        const auto count = static_cast<long double>(cube_cell_count(grid_, q));
        long double s = 0.0L;
        for_each_cell(grid_, q, [&](std::size_t i) { s += g_[i]; });
        const double mean = static_cast<double>(s / count);
        long double d = 0.0L;
        for_each_cell(grid_, q, [&](std::size_t i) { d += std::abs(g_[i] - mean); });
        return static_cast<double>(d / count);
      }
      case Reduce::median_oscillation: {
        std::vector<double> v;
        v.reserve(cube_cell_count(grid_, q));
        for_each_cell(grid_, q, [&](std::size_t i) { v.push_back(g_[i]); });
        const auto mid = v.begin() + static_cast<std::ptrdiff_t>((v.size() - 1) / 2);
        std::nth_element(v.begin(), mid, v.end());
        const double c = *mid;
        long double d = 0.0L;
        for (double x : v) d += std::abs(x - c);
        return static_cast<double>(d / static_cast<long double>(v.size()));
      }
    }
    return 0.0;
  }

 private:
  const Grid& grid_;
  std::vector<double> g_;
  const Weight* w_;
  Reduce reduce_;
};

std::vector<double> naive_path(const Grid& grid, const CubeEvaluator& eval, const CubeFamily& cubes) {
  std::vector<double> out(grid.cell_count(), 0.0);
  parallel_for(grid.cell_count(), [&](std::size_t x) {
    const CellIndex cell = grid.unravel(x);
    double best = 0.0;
    for (const Cube& q : cubes.cubes()) {
      if (q.contains(cell, grid.dim())) best = std::max(best, eval(q));
    }
    out[x] = best;
  });
  return out;
}

std::vector<double> scatter_path(const Grid& grid, const CubeEvaluator& eval, const CubeFamily& cubes) {
  std::vector<double> values(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t k) { values[k] = eval(cubes[k]); });
  std::vector<double> out(grid.cell_count(), 0.0);
  for (std::size_t k = 0; k < cubes.size(); ++k) {
    const double v = values[k];
    for_each_cell(grid, cubes[k], [&](std::size_t i) { out[i] = std::max(out[i], v); });
  }
  return out;
}

std::vector<double> tree_path(const Grid& grid, const CubeEvaluator& eval, const CubeFamily& cubes) {
  if (cubes.kind() != FamilyKind::dyadic) {
    throw ConfigError("dyadic tree path needs a dyadic cube family");
  }
  const std::size_t n = grid.cells_per_axis();
  const std::size_t levels = grid.levels();
  const int dim = grid.dim();
  // table[k] holds the values of the dyadic cubes of side 2^k, indexed like a grid of N/2^k cells.
  std::vector<std::vector<double>> table(levels + 1);
  for (std::size_t k = 0; k <= levels; ++k) {
    const std::size_t side = std::size_t{1} << k;
    const std::size_t m = n / side;
    const std::size_t count = dim == 1 ? m : m * m;
    table[k].resize(count);
    parallel_for(count, [&, side, m](std::size_t t) {
      const Cube q{{(t % m) * side, dim == 1 ? 0 : (t / m) * side}, side};
      table[k][t] = eval(q);
    });
  }
  std::vector<double> out(grid.cell_count());
  parallel_for(grid.cell_count(), [&](std::size_t x) {
    const CellIndex cell = grid.unravel(x);
    double best = 0.0;
    for (std::size_t k = 0; k <= levels; ++k) {
      const std::size_t m = n >> k;
      const std::size_t a = cell[0] >> k;
      const std::size_t t = dim == 1 ? a : a + m * (cell[1] >> k);
      best = std::max(best, table[k][t]);
    }
    out[x] = best;
  });
  return out;
}

}  // namespace

GridFunction maximal(const GridFunction& f, const MaximalSpec& spec, const Weight* w,
                     const CubeFamily& cubes, MaximalPath path) {
  spec.validate();
  require_same_grid(f.grid(), cubes.grid(), "maximal");
  if (spec.needs_weight() != (w != nullptr)) {
    throw ConfigError(spec.needs_weight() ? "maximal kind " + spec.descriptor() + " needs a weight"
                                          : "maximal kind " + spec.descriptor() + " takes no weight");
  }
  if (w) require_same_grid(f.grid(), w->grid(), "maximal");
  const Plan plan = plan_for(spec);
  const Grid& grid = f.grid();
  std::vector<double> g(f.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = std::abs(f[i]);
    g[i] = plan.inner_power == 1.0 ? a : std::pow(a, plan.inner_power);
  }
  const CubeEvaluator eval(grid, std::move(g), w, plan.reduce);

  if (path == MaximalPath::automatic) {
    path = cubes.kind() == FamilyKind::dyadic ? MaximalPath::dyadic_tree : MaximalPath::scatter;
  }
  std::vector<double> out;
  switch (path) {
    case MaximalPath::naive: out = naive_path(grid, eval, cubes); break;
    case MaximalPath::scatter: out = scatter_path(grid, eval, cubes); break;
    case MaximalPath::dyadic_tree: out = tree_path(grid, eval, cubes); break;
    case MaximalPath::automatic: break;
  }
  if (plan.outer_power != 1.0) {
    for (double& v : out) v = std::pow(v, plan.outer_power);
  }
  return GridFunction(grid, std::move(out));
}

double fefferman_stein_ratio(const GridFunction& f, const Weight& w, double p, double delta,
                             const CubeFamily& cubes) {
  if (f.max_abs() == 0.0) throw UndefinedRatioError("Fefferman-Stein ratio of the zero function");
  const GridFunction top = maximal(f, MaximalSpec::hl_delta(delta), cubes);
  const GridFunction bottom = maximal(f, MaximalSpec::sharp_delta(delta), cubes);
  const double den = lp_norm(bottom, w, p);
  if (!(den > 0.0)) throw UndefinedRatioError("sharp maximal function vanishes identically");
  return lp_norm(top, w, p) / den;
}

}  // namespace bmolab
