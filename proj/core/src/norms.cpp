#include "bmolab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "bmolab/parallel.hpp"

namespace bmolab {

BmoVariant BmoVariant::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("norm variant must look like 'kind:parameter', got '" + std::string(text) + "'");
  }
  const std::string_view kind = text.substr(0, colon);
  double param = 0.0;
  try {
    param = std::stod(std::string(text.substr(colon + 1)));
  } catch (const std::exception&) {
    throw ConfigError("bad norm parameter in '" + std::string(text) + "'");
  }
  BmoVariant v;
  if (kind == "strong") {
    v = strong(param);
  } else if (kind == "weak") {
    v = weak(param);
  } else if (kind == "inf_centered") {
    v = inf_centered(param);
  } else if (kind == "stromberg") {
    v = stromberg(param);
  } else {
    throw ConfigError("unknown norm variant '" + std::string(kind) + "'");
  }
  v.validate();
  return v;
}

void BmoVariant::validate() const {
  const double x = parameter;
  bool ok = std::isfinite(x);
  switch (kind) {
    case BmoKind::strong: ok = ok && x > 0.0; break;
    case BmoKind::weak: ok = ok && x > 1.0; break;
    case BmoKind::inf_centered: ok = ok && x > 0.0 && x < 1.0; break;
    case BmoKind::stromberg: ok = ok && x > 0.0 && x <= 0.5; break;
  }
  if (!ok) throw DomainError("parameter out of range for " + descriptor());
}

std::string BmoVariant::name() const {
  switch (kind) {
    case BmoKind::strong: return "strong";
    case BmoKind::weak: return "weak";
    case BmoKind::inf_centered: return "inf_centered";
    case BmoKind::stromberg: return "stromberg";
  }
  return "unknown";
}

std::string BmoVariant::descriptor() const {
  std::ostringstream os;
  os << name() << ':' << parameter;
  return os.str();
}

namespace {

void require_positive(double p, const char* what) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError(std::string(what) + " must be positive");
}

struct Level {
  double value;
  double mass;
};

// sup over levels l of l * (mass of {v >= l})^{1/p}.
double weak_sup(std::vector<Level>& levels, double p) {
  std::sort(levels.begin(), levels.end(),
            [](const Level& a, const Level& b) { return a.value > b.value; });
  double best = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < levels.size();) {
    const double level = levels[i].value;
    while (i < levels.size() && levels[i].value == level) mass += levels[i++].mass;
    if (level > 0.0) best = std::max(best, level * std::pow(mass, 1.0 / p));
  }
  return best;
}

}  // namespace

double lp_norm(const GridFunction& f, const Weight& w, double p) {
  require_positive(p, "L^p exponent");
  require_same_grid(f.grid(), w.grid(), "lp_norm");
  long double s = 0.0L;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]), p) * w[i];
  return std::pow(static_cast<double>(s * f.grid().cell_volume()), 1.0 / p);
}

double weak_lp_norm(const GridFunction& f, const Weight& w, double p) {
  require_positive(p, "weak L^p exponent");
  require_same_grid(f.grid(), w.grid(), "weak_lp_norm");
  const double vol = f.grid().cell_volume();
  std::vector<Level> levels(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) levels[i] = {std::abs(f[i]), vol * w[i]};
  return weak_sup(levels, p);
}

double layer_cake_integral(const GridFunction& f, const Weight& w, double p) {
  require_positive(p, "layer-cake exponent");
  require_same_grid(f.grid(), w.grid(), "layer_cake_integral");
  const double vol = f.grid().cell_volume();
  std::vector<Level> levels(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) levels[i] = {std::abs(f[i]), vol * w[i]};
  std::sort(levels.begin(), levels.end(),
            [](const Level& a, const Level& b) { return a.value > b.value; });
  // Walk levels from the top: on (next lower level, l] the superlevel set is {|f| >= l}.
  long double total = 0.0L;
  double mass = 0.0;
  for (std::size_t i = 0; i < levels.size();) {
    const double level = levels[i].value;
    while (i < levels.size() && levels[i].value == level) mass += levels[i++].mass;
    const double below = i < levels.size() ? levels[i].value : 0.0;
    if (level > 0.0) total += mass * (std::pow(level, p) - std::pow(below, p));
  }
  return static_cast<double>(total);
}

double morrey_norm(const GridFunction& f, const Weight& w, double p, double q,
                   const CubeFamily& cubes) {
  require_positive(q, "Morrey inner exponent");
  if (!(q < p) || !std::isfinite(p)) throw DomainError("Morrey norm needs 0 < q < p < infinity");
  require_same_grid(f.grid(), w.grid(), "morrey_norm");
  require_same_grid(f.grid(), cubes.grid(), "morrey_norm");
  const Grid& grid = f.grid();
  std::vector<double> fq(grid.cell_count());
  for (std::size_t i = 0; i < fq.size(); ++i) fq[i] = std::pow(std::abs(f[i]), q) * w[i];
  const CubeSums sf(grid, fq);
  const CubeSums sw(grid, w.values());
  const double vol = grid.cell_volume();
  double best = 0.0;
  for (const Cube& c : cubes.cubes()) {
    const double wq = sw.sum(c) * vol;
    const double inner = std::max(0.0, sf.sum(c) * vol);
    best = std::max(best, std::pow(wq, 1.0 / p - 1.0 / q) * std::pow(inner, 1.0 / q));
  }
  return best;
}

double center_objective(const GridFunction& f, const Weight& w, const Cube& cube, double r,
                        double c) {
  long double num = 0.0L;
  long double den = 0.0L;
  const auto fv = f.values();
  const auto wv = w.values();
  for_each_cell(f.grid(), cube, [&](std::size_t i) {
    // (|f - c|/w)^r w = |f - c|^r w^{1-r}
    num += std::pow(std::abs(fv[i] - c), r) * std::pow(wv[i], 1.0 - r);
    den += wv[i];
  });
  return static_cast<double>(num / den);
}

double minimizing_center(const GridFunction& f, const Weight& w, const Cube& cube, double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("minimizing_center needs r in (0, 1)");
  require_same_grid(f.grid(), w.grid(), "minimizing_center");
  require_fits(f.grid(), cube);
  std::vector<double> values;
  values.reserve(cube_cell_count(f.grid(), cube));
  for_each_cell(f.grid(), cube, [&](std::size_t i) { values.push_back(f[i]); });
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<double> candidates;
  candidates.reserve(2 * values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) candidates.push_back(0.5 * (values[i - 1] + values[i]));
    candidates.push_back(values[i]);
  }
  std::size_t best_index = 0;
  double best = center_objective(f, w, cube, r, candidates[0]);
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const double v = center_objective(f, w, cube, r, candidates[k]);
    if (v < best) {
      best = v;
      best_index = k;
    }
  }
  double center = candidates[best_index];
  if (candidates.size() < 3) return center;

  // Golden-section polish inside the bracket formed by the neighbouring candidates.
  double lo = candidates[best_index == 0 ? 0 : best_index - 1];
  double hi = candidates[std::min(best_index + 1, candidates.size() - 1)];
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = center_objective(f, w, cube, r, x1);
  double f2 = center_objective(f, w, cube, r, x2);
  const double tol = 1e-10 * std::max(1.0, std::abs(center));
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = center_objective(f, w, cube, r, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = center_objective(f, w, cube, r, x2);
    }
  }
  const double polished = f1 <= f2 ? x1 : x2;
  if (std::min(f1, f2) < best) center = polished;
  return center;
}

namespace {

double strong_value(const GridFunction& f, const Weight& w, const Cube& cube, double p) {
  const double fq = average(f, cube);
  long double num = 0.0L;
  long double den = 0.0L;
  const auto fv = f.values();
  const auto wv = w.values();
  for_each_cell(f.grid(), cube, [&](std::size_t i) {
    num += std::pow(std::abs(fv[i] - fq), p) * std::pow(wv[i], 1.0 - p);
    den += wv[i];
  });
  return std::pow(static_cast<double>(num / den), 1.0 / p);
}

double weak_value(const GridFunction& f, const Weight& w, const Cube& cube, double p) {
  const double fq = average(f, cube);
  std::vector<Level> levels;
  levels.reserve(cube_cell_count(f.grid(), cube));
  double wq = 0.0;
  for_each_cell(f.grid(), cube, [&](std::size_t i) {
    levels.push_back({std::abs(f[i] - fq) / w[i], w[i]});
    wq += w[i];
  });
  // Both the level masses and w(Q) carry the same h^dim factor, which cancels.
  return weak_sup(levels, p) / std::pow(wq, 1.0 / p);
}

double stromberg_value(const GridFunction& f, const Cube& cube, double s) {
  std::vector<double> v;
  v.reserve(cube_cell_count(f.grid(), cube));
  for_each_cell(f.grid(), cube, [&](std::size_t i) { v.push_back(f[i]); });
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  // At most `allowed` cells may exceed t: count < s*m  <=>  count <= ceil(s*m) - 1.
  const auto allowed = static_cast<std::size_t>(std::ceil(s * static_cast<double>(m))) - 1;
  if (allowed + 1 >= m) return 0.0;
  const std::size_t keep = m - allowed;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + keep <= m; ++i) best = std::min(best, 0.5 * (v[i + keep - 1] - v[i]));
  return best;
}

}  // namespace

double bmo_cube_value(const GridFunction& f, const Weight& w, const BmoVariant& variant,
                      const Cube& cube) {
  variant.validate();
  require_same_grid(f.grid(), w.grid(), "bmo_norm");
  require_fits(f.grid(), cube);
  switch (variant.kind) {
    case BmoKind::strong: return strong_value(f, w, cube, variant.parameter);
    case BmoKind::weak: return weak_value(f, w, cube, variant.parameter);
    case BmoKind::inf_centered: {
      const double r = variant.parameter;
      const double c = minimizing_center(f, w, cube, r);
      return std::pow(center_objective(f, w, cube, r, c), 1.0 / r);
    }
    case BmoKind::stromberg: return stromberg_value(f, cube, variant.parameter);
  }
  return 0.0;
}

NormReport bmo_norm(const GridFunction& f, const Weight& w, const BmoVariant& variant,
                    const CubeFamily& cubes) {
  variant.validate();
  require_same_grid(f.grid(), w.grid(), "bmo_norm");
  require_same_grid(f.grid(), cubes.grid(), "bmo_norm");
  std::vector<double> per_cube(cubes.size());
  parallel_for(cubes.size(),
               [&](std::size_t k) { per_cube[k] = bmo_cube_value(f, w, variant, cubes[k]); });
  std::size_t arg = 0;
  for (std::size_t k = 1; k < per_cube.size(); ++k) {
    if (per_cube[k] > per_cube[arg]) arg = k;
  }
  return NormReport{variant, per_cube[arg], cubes[arg], cubes.descriptor()};
}

}  // namespace bmolab
