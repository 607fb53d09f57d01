#include "bmolab/harness/cz.hpp"

#include <cmath>

#include "bmolab/norms.hpp"

namespace bmolab {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

bool dyadic(const Cube& q) {
  return is_power_of_two(q.side) && q.anchor[0] % q.side == 0 && q.anchor[1] % q.side == 0;
}

double mu_average(const GridFunction& f, const Weight& w, const Cube& q, double c, double r) {
  long double num = 0.0L;
  long double den = 0.0L;
  for_each_cell(f.grid(), q, [&](std::size_t i) {
    num += std::pow(std::abs(f[i] - c) / w[i], r) * w[i];
    den += w[i];
  });
  return static_cast<double>(num / den);
}

double mu_of(const Weight& w, const Cube& q) {
  long double m = 0.0L;
  for_each_cell(w.grid(), q, [&](std::size_t i) { m += w[i]; });
  return static_cast<double>(m);
}

std::vector<Cube> children(const Cube& q, int dim) {
  const std::size_t half = q.side / 2;
  std::vector<Cube> out;
  for (std::size_t j = 0; j < (dim == 1 ? 1u : 2u); ++j) {
    for (std::size_t i = 0; i < 2; ++i) {
      out.push_back({{q.anchor[0] + i * half, dim == 1 ? 0 : q.anchor[1] + j * half}, half});
    }
  }
  return out;
}

void descend(const GridFunction& f, const Weight& w, const Cube& q, double c, double r,
             double level, CZDecomposition& out) {
  if (q.side == 1) return;
  for (const Cube& child : children(q, f.grid().dim())) {
    const double avg = mu_average(f, w, child, c, r);
    if (avg > level) {
      out.selected.push_back(child);
      out.selected_averages.push_back(avg);
    } else {
      descend(f, w, child, c, r, level, out);
    }
  }
}

}  // namespace

CZDecomposition cz_decompose(const GridFunction& f, const Weight& w, const Cube& base, double s,
                             double r) {
  require_same_grid(f.grid(), w.grid(), "cz_decompose");
  require_fits(f.grid(), base);
  if (!dyadic(base)) throw DomainError("CZ base cube must be dyadic");
  if (!(s > 1.0)) throw DomainError("CZ threshold s must exceed 1");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("CZ exponent r must lie in (0, 1)");
  CZDecomposition out;
  out.base = base;
  out.threshold = s;
  out.exponent = r;
  out.center = minimizing_center(f, w, base, r);
  const double level = std::pow(s, r);
  const double root = mu_average(f, w, base, out.center, r);
  if (root > level) {
    throw DomainError("base cube average " + std::to_string(root) + " exceeds s^r = " +
                      std::to_string(level) + "; normalize f first");
  }
  descend(f, w, base, out.center, r, level, out);
  return out;
}

GridFunction normalize_bmo_r(const GridFunction& f, const Weight& w, double r,
                             const CubeFamily& cubes) {
  const double norm = bmo_norm(f, w, BmoVariant::inf_centered(r), cubes).value;
  if (!(norm > 0.0)) return f;
  return (1.0 / norm) * f;
}

CZCheck validate_cz(const GridFunction& f, const Weight& w, const CZDecomposition& cz) {
  const Grid& grid = f.grid();
  const int dim = grid.dim();
  CZCheck out;
  std::vector<int> cover(grid.cell_count(), 0);
  const double level = std::pow(cz.threshold, cz.exponent);
  const double cap = std::pow(2.0, dim) * level;
  for (const Cube& q : cz.selected) {
    if (!cube_fits(grid, q)) {
      out.contained = false;
      continue;
    }
    for_each_cell(grid, q, [&](std::size_t i) {
      if (++cover[i] > 1) out.disjoint = false;
      if (!cz.base.contains(grid.unravel(i), dim)) out.contained = false;
    });
    const double avg = mu_average(f, w, q, cz.center, cz.exponent);
    if (!(avg > level)) out.lower = false;
    if (avg > cap) out.upper = false;
    out.worst_upper = std::max(out.worst_upper, avg / cap);
    if (q.side < cz.base.side) {
      const std::size_t ps = 2 * q.side;
      const Cube parent{{q.anchor[0] / ps * ps, q.anchor[1] / ps * ps}, ps};
      const double growth = mu_of(w, parent) / mu_of(w, q);
      out.worst_doubling = std::max(out.worst_doubling, avg / (growth * level));
    }
  }
  for_each_cell(grid, cz.base, [&](std::size_t i) {
    if (cover[i] == 0 && std::abs(f[i] - cz.center) / w[i] > cz.threshold) out.complement = false;
  });
  return out;
}

}  // namespace bmolab
