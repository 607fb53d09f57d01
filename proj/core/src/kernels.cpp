#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "bmolab/czo.hpp"

namespace bmolab {

namespace {

double norm(const Point& p, int dim) { return dim == 1 ? std::abs(p[0]) : std::hypot(p[0], p[1]); }

Point shifted(const Point& p, const Point& e) { return {p[0] + e[0], p[1] + e[1]}; }

}  // namespace

BilinearKernel kernel_ialpha(int dim, double alpha) {
  if (dim != 1 && dim != 2) throw ConfigError("kernel dimension must be 1 or 2");
  if (!(alpha > 0.0 && alpha < 2.0 * dim)) throw DomainError("ialpha needs 0 < alpha < 2n");
  const double beta = 2.0 * dim - alpha;
  std::ostringstream name;
  name << "ialpha:alpha=" << alpha;
  BilinearKernel k;
  k.name = name.str();
  k.dim = dim;
  k.alpha = alpha;
  k.gamma = 1.0;
  k.size_constant = 1.0;
  k.regularity_constant = 2.0 * beta * std::pow(4.0, beta + 1.0);
  k.evaluate = [dim, beta](const Point& u, const Point& v) {
    return std::pow(norm(u, dim) + norm(v, dim), -beta);
  };
  return k;
}

BilinearKernel kernel_odd1d() {
  BilinearKernel k;
  k.name = "odd1d";
  k.dim = 1;
  k.alpha = 0.0;
  k.gamma = 1.0;
  k.size_constant = 2.0 * std::sqrt(2.0);
  k.regularity_constant = 1183.0;
  k.evaluate = [](const Point& u, const Point& v) {
    const double r2 = u[0] * u[0] + v[0] * v[0];
    return (u[0] - v[0]) / (r2 * std::sqrt(r2));
  };
  return k;
}

BilinearKernel kernel_riesz2d() {
  BilinearKernel k;
  k.name = "riesz2d";
  k.dim = 2;
  k.alpha = 0.0;
  k.gamma = 1.0;
  k.size_constant = 4.0 * std::sqrt(2.0);
  k.regularity_constant = 56400.0;
  k.evaluate = [](const Point& u, const Point& v) {
    const double r2 = u[0] * u[0] + u[1] * u[1] + v[0] * v[0] + v[1] * v[1];
    return (u[0] + v[0]) / (r2 * r2 * std::sqrt(r2));
  };
  return k;
}

BilinearKernel scaled(const BilinearKernel& k, double c) {
  BilinearKernel out = k;
  std::ostringstream name;
  name << c << '*' << k.name;
  out.name = name.str();
  out.size_constant = std::abs(c) * k.size_constant;
  out.regularity_constant = std::abs(c) * k.regularity_constant;
  out.evaluate = [inner = k.evaluate, c](const Point& u, const Point& v) { return c * inner(u, v); };
  return out;
}

BilinearKernel kernel_from_preset(std::string_view preset, int dim) {
  if (preset == "odd1d") {
    if (dim != 1) throw ConfigError("odd1d is a one-dimensional kernel");
    return kernel_odd1d();
  }
  if (preset == "riesz2d") {
    if (dim != 2) throw ConfigError("riesz2d is a two-dimensional kernel");
    return kernel_riesz2d();
  }
  constexpr std::string_view prefix = "ialpha:alpha=";
  if (preset.substr(0, prefix.size()) == prefix) {
    try {
      return kernel_ialpha(dim, std::stod(std::string(preset.substr(prefix.size()))));
    } catch (const std::invalid_argument&) {
      throw ConfigError("bad alpha in kernel preset '" + std::string(preset) + "'");
    }
  }
  throw ConfigError("unknown kernel preset '" + std::string(preset) + "'");
}

namespace {

struct Sampler {
  std::mt19937_64 rng;
  int dim;

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

  Point direction() {
    if (dim == 1) return {uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0, 0.0};
    const double t = uniform(0.0, 2.0 * std::numbers::pi);
    return {std::cos(t), std::sin(t)};
  }

  Point vector() {
    // Independent log-uniform magnitudes so that |u|/|v| ranges widely.
    const double r = std::pow(10.0, uniform(-2.0, 2.0));
    const Point d = direction();
    return {r * d[0], r * d[1]};
  }
};

}  // namespace

KernelCheck verify_kernel(const BilinearKernel& k, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw DomainError("verify_kernel needs at least one sample");
  Sampler s{std::mt19937_64(seed), k.dim};
  const double beta = 2.0 * k.dim - k.alpha;
  KernelCheck out;
  out.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point u = s.vector();
    const Point v = s.vector();
    const double nu = norm(u, k.dim);
    const double nv = norm(v, k.dim);
    const double sum = nu + nv;
    const double base = k(u, v);
    out.size_quotient = std::max(out.size_quotient, std::abs(base) * std::pow(sum, beta));

    const double len = 0.5 * std::max(nu, nv) * std::pow(s.uniform(0.0, 1.0), 2.0);
    if (!(len > 0.0)) continue;
    const Point dir = s.direction();
    const Point e{len * dir[0], len * dir[1]};
    double moved = 0.0;
    switch (i % 3) {
      case 0: moved = k(shifted(u, e), shifted(v, e)); break;  // move x
      case 1: moved = k(shifted(u, e), v); break;              // move y1
      default: moved = k(u, shifted(v, e)); break;             // move y2
    }
    const double q = std::abs(moved - base) * std::pow(sum, beta + k.gamma) / std::pow(len, k.gamma);
    if (std::isfinite(q)) out.regularity_quotient = std::max(out.regularity_quotient, q);
  }
  out.passes = out.size_quotient <= 1.05 * k.size_constant &&
               out.regularity_quotient <= 1.05 * k.regularity_constant;
  return out;
}

double homogeneity_error(const BilinearKernel& k, std::size_t samples, std::uint64_t seed) {
  Sampler s{std::mt19937_64(seed), k.dim};
  const double degree = k.homogeneity_degree();
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point u = s.vector();
    const Point v = s.vector();
    const double t = std::pow(10.0, s.uniform(-1.0, 1.0));
    const double base = k(u, v);
    if (base == 0.0) continue;
    const double lhs = k({t * u[0], t * u[1]}, {t * v[0], t * v[1]});
    worst = std::max(worst, std::abs(lhs - std::pow(t, degree) * base) / std::abs(std::pow(t, degree) * base));
  }
  return worst;
}

}  // namespace bmolab
