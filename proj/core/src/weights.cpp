#include "bmolab/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "bmolab/digest.hpp"

namespace bmolab {

struct Weight::Cache {
  std::mutex mutex;
  std::map<std::uint64_t, double> a1;
  std::map<std::pair<std::uint64_t, double>, double> ap;
};

Weight::Weight(GridFunction values, std::string descriptor)
    : fn_(std::move(values)), descriptor_(std::move(descriptor)),
      cache_(std::make_shared<Cache>()) {
  for (double v : fn_.values()) {
    if (!(v > 0.0)) throw DomainError("weight values must be strictly positive");
  }
  digest_ = Digest().add(fn_.values()).value();
}

Weight unit_weight(const Grid& grid) { return Weight(GridFunction::constant(grid, 1.0), "const"); }

Weight constant_weight(const Grid& grid, double c) {
  std::ostringstream name;
  name << "const:c=" << c;
  return Weight(GridFunction::constant(grid, c), name.str());
}

Weight two_valued_weight(const Grid& grid, double left, double right) {
  const double mid = grid.origin()[0] + 0.5 * grid.side();
  std::ostringstream name;
  name << "two-valued:left=" << left << ",right=" << right;
  return Weight(GridFunction::sample(grid, [&](const Point& x) { return x[0] < mid ? left : right; }),
                name.str());
}

Weight scaled(const Weight& w, double c) {
  if (!(c > 0.0)) throw DomainError("weights can only be scaled by a positive constant");
  return Weight(c * w.function(), w.descriptor() + "*" + std::to_string(c));
}

Weight make_power_weight(const Grid& grid, double exponent, const Point& center, bool a1_mode) {
  if (a1_mode && (exponent > 0.0 || exponent <= -grid.dim())) {
    throw DomainError("power weight exponent must lie in (-dim, 0] to be an A_1 weight");
  }
  const double h = grid.spacing();
  auto fn = GridFunction::sample(grid, [&](const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
      const double d = x[static_cast<std::size_t>(a)] - center[static_cast<std::size_t>(a)];
      r2 += d * d;
    }
    return std::pow(std::max(std::sqrt(r2), h), exponent);
  });
  std::ostringstream name;
  name << "power:a=" << exponent << ",center=" << center[0];
  if (grid.dim() == 2 && center[1] != center[0]) name << ",cy=" << center[1];
  return Weight(std::move(fn), name.str());
}

namespace {

double parse_double(std::string_view text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(text), &used);
    if (used != text.size()) throw ConfigError("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + std::string(text) + "'");
  }
}

std::map<std::string, double, std::less<>> parse_options(std::string_view text) {
  std::map<std::string, double, std::less<>> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("malformed preset option '" + std::string(item) + "'");
    }
    out.emplace(std::string(item.substr(0, eq)), parse_double(item.substr(eq + 1)));
  }
  return out;
}

double option(const std::map<std::string, double, std::less<>>& opts, std::string_view key,
              std::string_view preset) {
  const auto it = opts.find(key);
  if (it == opts.end()) {
    throw ConfigError("preset '" + std::string(preset) + "' is missing '" + std::string(key) + "'");
  }
  return it->second;
}

}  // namespace

Weight weight_from_preset(const Grid& grid, std::string_view preset) {
  const auto colon = preset.find(':');
  const std::string_view name = preset.substr(0, colon);
  const auto opts =
      parse_options(colon == std::string_view::npos ? std::string_view{} : preset.substr(colon + 1));
  if (name == "const") {
    const auto it = opts.find("c");
    return it == opts.end() ? unit_weight(grid) : constant_weight(grid, it->second);
  }
  if (name == "two-valued") {
    return two_valued_weight(grid, option(opts, "left", preset), option(opts, "right", preset));
  }
  if (name == "power") {
    const double mid = grid.origin()[0] + 0.5 * grid.side();
    const auto c = opts.find("center");
    const double cx = c == opts.end() ? mid : c->second;
    const auto cy = opts.find("cy");
    return make_power_weight(grid, option(opts, "a", preset),
                             Point{cx, cy == opts.end() ? cx : cy->second});
  }
  throw ConfigError("unknown weight preset '" + std::string(preset) + "'");
}

namespace {

void require_family_grid(const Weight& w, const CubeFamily& cubes) {
  require_same_grid(w.grid(), cubes.grid(), "weight constant");
}

double cube_min(const Grid& grid, std::span<const double> values, const Cube& q) {
  double m = std::numeric_limits<double>::infinity();
  for_each_cell(grid, q, [&](std::size_t i) { m = std::min(m, values[i]); });
  return m;
}

}  // namespace

double compute_ap_constant(const Weight& w, double p, const CubeFamily& cubes) {
  if (!(p > 1.0)) throw DomainError("ap_constant needs p > 1 (use a1_constant for p = 1)");
  require_family_grid(w, cubes);
  const Grid& grid = w.grid();
  const double dual = -1.0 / (p - 1.0);
  std::vector<double> sigma(grid.cell_count());
  for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = std::pow(w[i], dual);
  const CubeSums sw(grid, w.values());
  const CubeSums ss(grid, sigma);
  double best = 0.0;
  for (const Cube& q : cubes.cubes()) {
    const double m = static_cast<double>(cube_cell_count(grid, q));
    best = std::max(best, (sw.sum(q) / m) * std::pow(ss.sum(q) / m, p - 1.0));
  }
  return best;
}

double compute_a1_constant(const Weight& w, const CubeFamily& cubes) {
  require_family_grid(w, cubes);
  const Grid& grid = w.grid();
  const CubeSums sw(grid, w.values());
  double best = 0.0;
  for (const Cube& q : cubes.cubes()) {
    const double m = static_cast<double>(cube_cell_count(grid, q));
    best = std::max(best, (sw.sum(q) / m) / cube_min(grid, w.values(), q));
  }
  return best;
}

double ap_constant(const Weight& w, double p, const CubeFamily& cubes) {
  const auto key = std::make_pair(cubes.digest(), p);
  {
    std::lock_guard lock(w.cache_->mutex);
    if (auto it = w.cache_->ap.find(key); it != w.cache_->ap.end()) return it->second;
  }
  const double value = compute_ap_constant(w, p, cubes);
  std::lock_guard lock(w.cache_->mutex);
  w.cache_->ap.emplace(key, value);
  return value;
}

double a1_constant(const Weight& w, const CubeFamily& cubes) {
  {
    std::lock_guard lock(w.cache_->mutex);
    if (auto it = w.cache_->a1.find(cubes.digest()); it != w.cache_->a1.end()) return it->second;
  }
  const double value = compute_a1_constant(w, cubes);
  std::lock_guard lock(w.cache_->mutex);
  w.cache_->a1.emplace(cubes.digest(), value);
  return value;
}

double weighted_measure(const Weight& w, const Cube& cube) {
  return weighted_measure(w.function(), cube);
}

}  // namespace bmolab
