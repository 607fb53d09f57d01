#include "bmolab/harness/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <memory>
#include <mutex>
#include <new>
#include <numeric>
#include <random>

#include "bmolab/norms.hpp"

namespace bmolab {

namespace {

using cd = std::complex<double>;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

double dot(const Pair& a, const Pair& b, int len) {
  double s = 0.0;
  for (int i = 0; i < len; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
  return s;
}

double distance(const Pair& a, const Pair& b, int len) {
  double s = 0.0;
  for (int i = 0; i < len; ++i) {
    const double d = a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
    s += d * d;
  }
  return std::sqrt(s);
}

double kernel_at(const BilinearKernel& k, const Pair& w) {
  if (k.dim == 1) return k({w[0], 0.0}, {w[1], 0.0});
  return k({w[0], w[1]}, {w[2], w[3]});
}

// C-infinity transition from 1 at t <= 0 to 0 at t >= 1; in particular C^2.
double cutoff(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return b / (a + b);
}

std::complex<double> series(const std::vector<FourierTerm>& terms, std::size_t count, const Pair& w,
                            int len) {
  cd s{0.0, 0.0};
  for (std::size_t j = 0; j < count; ++j) s += terms[j].a * std::polar(1.0, dot(terms[j].v, w, len));
  return s;
}

Pair random_ball_point(std::mt19937_64& rng, const Pair& center, double radius, int len) {
  std::normal_distribution<double> g;
  Pair d{};
  double n = 0.0;
  for (int i = 0; i < len; ++i) {
    d[static_cast<std::size_t>(i)] = g(rng);
    n += d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
  }
  n = std::sqrt(n);
  const double r = radius * std::pow(std::uniform_real_distribution<double>(0.0, 1.0)(rng), 1.0 / len);
  Pair out = center;
  for (int i = 0; i < len; ++i) out[static_cast<std::size_t>(i)] += r * d[static_cast<std::size_t>(i)] / n;
  return out;
}

double tail_sum(const std::vector<FourierTerm>& spectrum, std::size_t J) {
  long double s = 0.0L;
  for (std::size_t j = J; j < spectrum.size(); ++j) s += std::abs(spectrum[j].a);
  return static_cast<double>(s);
}

}  // namespace

FourierExpansion FourierExpansion::truncated(std::size_t J) const {
  FourierExpansion out = *this;
  out.truncation = J;
  out.tail_bound = tail_sum(spectrum, std::min(J, spectrum.size())) + alias_bound;
  return out;
}

std::complex<double> FourierExpansion::evaluate(const Pair& w) const {
  return series(spectrum, size(), w, 2 * dim);
}

double FourierExpansion::coefficient_sum() const {
  double s = 0.0;
  for (std::size_t j = 0; j < size(); ++j) s += std::abs(spectrum[j].a);
  return s;
}

FourierExpansion expand_reciprocal_kernel(const BilinearKernel& k, const Pair& center, double delta,
                                          std::size_t J, std::size_t samples_per_axis) {
  const int n = k.dim;
  const int len = 2 * n;
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("expansion scale delta must lie in (0, 1)");
  const double norm_center = distance(center, Pair{}, len);
  if (!(norm_center > 2.0 * std::sqrt(static_cast<double>(n)))) {
    throw DomainError("expansion center must satisfy |center| > 2 sqrt(n)");
  }
  const std::size_t M = samples_per_axis ? samples_per_axis : (n == 1 ? 64 : 16);
  const double radius = delta * std::sqrt(static_cast<double>(len));
  const double period = 3.0 * radius;

  const double k_center = kernel_at(k, center);
  if (!(std::isfinite(k_center)) || k_center == 0.0) {
    throw ZeroDivisorError("kernel vanishes at the expansion center");
  }
  const double far_value = 1.0 / k_center;

  std::size_t total = 1;
  for (int i = 0; i < len; ++i) total *= M;
  fftw_complex* buffer = fftw_alloc_complex(total);
  if (!buffer) throw std::bad_alloc();
  std::unique_ptr<fftw_complex, decltype(&fftw_free)> guard(buffer, &fftw_free);

  Pair start{};
  for (int i = 0; i < len; ++i) start[static_cast<std::size_t>(i)] = center[static_cast<std::size_t>(i)] - 0.5 * period;
  const double step = period / static_cast<double>(M);
  for (std::size_t idx = 0; idx < total; ++idx) {
    // Row-major: the last coordinate varies fastest, as FFTW expects.
    Pair w{};
    std::size_t rest = idx;
    for (int i = len - 1; i >= 0; --i) {
      const auto u = static_cast<std::size_t>(i);
      w[u] = start[u] + static_cast<double>(rest % M) * step;
      rest /= M;
    }
    const double rho = distance(w, center, len);
    double value = far_value;
    if (rho < 1.5 * radius) {
      const double kv = kernel_at(k, w);
      if (!std::isfinite(kv) || kv == 0.0 || (kv > 0.0) != (k_center > 0.0)) {
        throw ZeroDivisorError("kernel " + k.name + " vanishes or changes sign near the expansion ball");
      }
      const double chi = cutoff((rho - radius) / (0.5 * radius));
      value = chi / kv + (1.0 - chi) * far_value;
    }
    buffer[idx][0] = value;
    buffer[idx][1] = 0.0;
  }

  std::vector<int> dims(static_cast<std::size_t>(len), static_cast<int>(M));
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_plan plan = fftw_plan_dft(len, dims.data(), buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }

  FourierExpansion out;
  out.dim = n;
  out.center = center;
  out.delta = delta;
  out.radius = radius;
  out.samples_per_axis = M;
  out.spectrum.resize(total);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t idx = 0; idx < total; ++idx) {
    Pair v{};
    std::size_t rest = idx;
    for (int i = len - 1; i >= 0; --i) {
      const auto kk = static_cast<long>(rest % M);
      const long signed_k = kk < static_cast<long>(M / 2) ? kk : kk - static_cast<long>(M);
      v[static_cast<std::size_t>(i)] = two_pi * static_cast<double>(signed_k) / period;
      rest /= M;
    }
    const cd c = cd(buffer[idx][0], buffer[idx][1]) / static_cast<double>(total);
    out.spectrum[idx] = {c * std::polar(1.0, -dot(v, start, len)), v};
  }
  std::stable_sort(out.spectrum.begin(), out.spectrum.end(),
                   [](const FourierTerm& a, const FourierTerm& b) { return std::abs(a.a) > std::abs(b.a); });

  std::mt19937_64 rng(0x5eedULL);
  const std::size_t probes = n == 1 ? 1000 : 200;
  double worst = 0.0;
  for (std::size_t i = 0; i < probes; ++i) {
    const Pair w = random_ball_point(rng, center, radius, len);
    const cd approx = series(out.spectrum, out.spectrum.size(), w, len);
    worst = std::max(worst, std::abs(approx - cd(1.0 / kernel_at(k, w), 0.0)));
  }
  out.alias_bound = 2.0 * worst;
  const double gap = norm_center - radius;
  out.kernel_max = k.size_constant / std::pow(gap, 2.0 * n - k.alpha);
  return out.truncated(J);
}

FourierExpansion expand_reciprocal_kernel(const BilinearKernel& k, const Point& z0, double delta,
                                          std::size_t J) {
  const Pair center = k.dim == 1 ? Pair{z0[0], z0[0], 0.0, 0.0} : Pair{z0[0], z0[1], z0[0], z0[1]};
  return expand_reciprocal_kernel(k, center, delta, J);
}

FourierExpansion find_admissible_expansion(const BilinearKernel& k, std::size_t J) {
  const std::vector<Pair> centers =
      k.dim == 1 ? std::vector<Pair>{{3, 3, 0, 0}, {3, -3, 0, 0}, {-3, 3, 0, 0}}
                 : std::vector<Pair>{{3, 3, 3, 3}, {3, 3, -3, -3}, {-3, -3, 3, 3}};
  for (const Pair& c : centers) {
    for (double delta : {0.5, 0.25}) {
      try {
        return expand_reciprocal_kernel(k, c, delta, J);
      } catch (const ZeroDivisorError&) {
      }
    }
  }
  throw ZeroDivisorError("no preset expansion ball avoids the zeros of kernel " + k.name);
}

namespace {

Cube partner(const Grid& grid, const Cube& q, const FourierExpansion& e, int slot) {
  const int n = e.dim;
  Cube out{{0, 0}, q.side};
  for (int a = 0; a < n; ++a) {
    const double z = e.center[static_cast<std::size_t>(slot * n + a)] / e.delta;
    const double rounded = std::round(z);
    if (std::abs(z - rounded) > 1e-9) {
      throw GeometryError("center/delta must be integral to place Q' on whole cells");
    }
    const long anchor = static_cast<long>(q.anchor[static_cast<std::size_t>(a)]) -
                        static_cast<long>(q.side) * static_cast<long>(rounded);
    if (anchor < 0) throw GeometryError("Q' leaves the grid");
    out.anchor[static_cast<std::size_t>(a)] = static_cast<std::size_t>(anchor);
  }
  if (!cube_fits(grid, out)) throw GeometryError("Q' leaves the grid");
  return out;
}

std::vector<std::size_t> cells_of(const Grid& grid, const Cube& q) {
  std::vector<std::size_t> out;
  for_each_cell(grid, q, [&](std::size_t i) { out.push_back(i); });
  return out;
}

}  // namespace

Reconstruction reconstruct_oscillation(const GridFunction& b, const BilinearOperator& op,
                                       const Cube& q, const FourierExpansion& expansion,
                                       bool iterated) {
  const Grid& grid = op.grid();
  require_same_grid(grid, b.grid(), "reconstruction");
  require_fits(grid, q);
  if (expansion.dim != grid.dim()) throw ConfigError("expansion and grid dimensions differ");
  const int n = grid.dim();
  const int len = 2 * n;

  Reconstruction rec;
  rec.iterated = iterated;
  rec.q = q;
  rec.q1 = partner(grid, q, expansion, 0);
  rec.q2 = partner(grid, q, expansion, 1);
  rec.cells = cells_of(grid, q);
  const auto s1 = cells_of(grid, rec.q1);
  const auto s2 = cells_of(grid, rec.q2);

  const double r = static_cast<double>(q.side) * grid.spacing();
  const double scale = expansion.delta / r;
  const double prefactor = std::pow(r / expansion.delta, 2.0 * n - op.kernel().alpha) /
                           (cube_volume(grid, rec.q1) * cube_volume(grid, rec.q2));
  const double b1 = average(b, rec.q1);
  const double b2 = average(b, rec.q2);

  const std::size_t m = rec.cells.size();
  std::vector<double> sign(m);
  rec.target.resize(m);
  rec.bound.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double x = b[rec.cells[k]];
    const double signed_target = iterated ? (x - b1) * (x - b2) : x - b1;
    sign[k] = signed_target > 0.0 ? 1.0 : signed_target < 0.0 ? -1.0 : 0.0;
    rec.target[k] = std::abs(signed_target);
    double mean1 = 0.0, mean2 = 0.0;
    for (std::size_t y : s1) mean1 += std::abs(x - b[y]);
    for (std::size_t y : s2) mean2 += std::abs(x - b[y]);
    mean1 /= static_cast<double>(s1.size());
    mean2 /= static_cast<double>(s2.size());
    rec.bound[k] = expansion.tail_bound * expansion.kernel_max * (iterated ? mean1 * mean2 : mean1);
  }

  auto position = [&](std::size_t cell, int axis_offset) {
    const Point p = grid.midpoint(cell);
    Pair out{};
    for (int a = 0; a < n; ++a) out[static_cast<std::size_t>(axis_offset + a)] = p[static_cast<std::size_t>(a)];
    return out;
  };

  std::vector<cd> total(m, cd{0.0, 0.0});
  std::vector<cd> g(s1.size()), h(s2.size());
  const CommutatorSlot slot = iterated ? CommutatorSlot::iterated : CommutatorSlot::first;
  for (std::size_t j = 0; j < expansion.size(); ++j) {
    const FourierTerm& term = expansion.spectrum[j];
    for (std::size_t i = 0; i < s1.size(); ++i) g[i] = std::polar(1.0, -scale * dot(term.v, position(s1[i], 0), len));
    for (std::size_t i = 0; i < s2.size(); ++i) h[i] = std::polar(1.0, -scale * dot(term.v, position(s2[i], n), len));
    const auto c = commutator_on(slot, b, op, s1, g, s2, h, rec.cells);
    for (std::size_t k = 0; k < m; ++k) {
      Pair xx = position(rec.cells[k], 0);
      for (int a = 0; a < n; ++a) xx[static_cast<std::size_t>(n + a)] = xx[static_cast<std::size_t>(a)];
      const cd mj = std::polar(1.0, scale * dot(term.v, xx, len)) * sign[k];
      total[k] += term.a * c[k] * mj;
    }
  }
  rec.value.resize(m);
  rec.imag.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const cd v = prefactor * total[k];
    rec.value[k] = v.real();
    rec.imag[k] = v.imag();
    rec.max_error = std::max(rec.max_error, std::abs(v - cd(rec.target[k], 0.0)));
    rec.max_bound = std::max(rec.max_bound, rec.bound[k]);
    rec.max_target = std::max(rec.max_target, rec.target[k]);
  }
  return rec;
}

OscillationEstimate estimate_oscillation(const Reconstruction& rec, const Weight& w, double p,
                                         double q) {
  if (!(p > 0.0) || !(q > 0.0 && q < p)) throw DomainError("estimators need 0 < q < p");
  const Grid& grid = w.grid();
  const double vol = grid.cell_volume();
  auto weak = [&](const std::vector<double>& vals) {
    std::vector<double> g(grid.cell_count(), 0.0);
    for (std::size_t k = 0; k < rec.cells.size(); ++k) g[rec.cells[k]] = std::abs(vals[k]) / w[rec.cells[k]];
    return weak_lp_norm(GridFunction(grid, std::move(g)), w, p) / std::pow(weighted_measure(w, rec.q), 1.0 / p);
  };
  auto morrey = [&](const std::vector<double>& vals) {
    long double s = 0.0L;
    for (std::size_t k = 0; k < rec.cells.size(); ++k) {
      const double wx = w[rec.cells[k]];
      s += std::pow(std::abs(vals[k]) / wx, q) * wx * vol;
    }
    return std::pow(static_cast<double>(s) / weighted_measure(w, rec.q), 1.0 / q);
  };
  return {weak(rec.value), weak(rec.target), morrey(rec.value), morrey(rec.target)};
}

}  // namespace bmolab
