#include "bmolab/harness/john_nirenberg.hpp"

#include <algorithm>
#include <cmath>

#include "bmolab/norms.hpp"

namespace bmolab {

std::vector<DecayPoint> oscillation_distribution(const GridFunction& f, const Weight& w,
                                                 const Cube& q, double center,
                                                 std::span<const double> levels) {
  if (levels.empty()) throw DomainError("oscillation_distribution needs at least one level");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0) || (i > 0 && !(levels[i] > levels[i - 1]))) {
      throw DomainError("levels must be positive and strictly increasing");
    }
  }
  require_same_grid(f.grid(), w.grid(), "oscillation_distribution");
  require_fits(f.grid(), q);
  std::vector<long double> mass(levels.size(), 0.0L);
  long double total = 0.0L;
  for_each_cell(f.grid(), q, [&](std::size_t i) {
    const double g = std::abs(f[i] - center) / w[i];
    total += w[i];
    // levels are sorted, so the cell counts for every level below g.
    const auto above = std::lower_bound(levels.begin(), levels.end(), g) - levels.begin();
    for (std::ptrdiff_t k = 0; k < above; ++k) mass[static_cast<std::size_t>(k)] += w[i];
  });
  std::vector<DecayPoint> out(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    out[k] = {levels[k], static_cast<double>(mass[k] / total)};
  }
  return out;
}

std::vector<double> geometric_levels(const GridFunction& f, const Weight& w, const Cube& q,
                                     double center, double ratio) {
  if (!(ratio > 1.0)) throw DomainError("level ratio must exceed 1");
  std::vector<double> g;
  for_each_cell(f.grid(), q, [&](std::size_t i) { g.push_back(std::abs(f[i] - center) / w[i]); });
  std::sort(g.begin(), g.end());
  const double top = g.back();
  double t = g[(g.size() - 1) / 2];
  std::vector<double> out;
  if (!(t > 0.0)) {
    // More than half the cells sit on the center; start at the smallest positive oscillation.
    const auto it = std::upper_bound(g.begin(), g.end(), 0.0);
    if (it == g.end()) return out;
    t = *it;
  }
  for (; t <= top; t *= ratio) out.push_back(t);
  return out;
}

JNDecayFit fit_exponential_decay(std::span<const DecayPoint> points) {
  JNDecayFit fit;
  for (const DecayPoint& p : points) {
    if (p.fraction > 0.0) fit.points.push_back(p);
  }
  if (fit.points.size() < 3) {
    throw InsufficientDataError("exponential fit needs at least three positive fractions");
  }
  const auto n = static_cast<double>(fit.points.size());
  double st = 0.0, sy = 0.0;
  for (const DecayPoint& p : fit.points) {
    st += p.t;
    sy += std::log(p.fraction);
  }
  const double mt = st / n, my = sy / n;
  double stt = 0.0, sty = 0.0;
  for (const DecayPoint& p : fit.points) {
    stt += (p.t - mt) * (p.t - mt);
    sty += (p.t - mt) * (std::log(p.fraction) - my);
  }
  if (!(stt > 0.0)) throw InsufficientDataError("exponential fit needs distinct levels");
  const double slope = sty / stt;
  const double intercept = my - slope * mt;
  fit.c1 = std::exp(intercept);
  fit.c2 = -slope;
  for (const DecayPoint& p : fit.points) {
    fit.residual = std::max(fit.residual, std::abs(std::log(p.fraction) - (intercept + slope * p.t)));
  }
  return fit;
}

JNCheck john_nirenberg_check(const GridFunction& f, const Weight& w, const Cube& q, double r) {
  JNCheck out;
  out.center = minimizing_center(f, w, q, r);
  const auto levels = geometric_levels(f, w, q, out.center);
  if (levels.empty()) throw InsufficientDataError("oscillation vanishes on the cube");
  const auto points = oscillation_distribution(f, w, q, out.center, levels);
  out.fit = fit_exponential_decay(points);
  for (const DecayPoint& p : points) {
    const double model = out.fit.c1 * std::exp(-out.fit.c2 * p.t);
    out.worst_excess = std::max(out.worst_excess, p.fraction / model);
  }
  out.passes = out.fit.c2 > 0.0 && out.worst_excess <= 1.1;
  return out;
}

}  // namespace bmolab
