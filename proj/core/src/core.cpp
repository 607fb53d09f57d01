#include "bmolab/core.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "bmolab/digest.hpp"

namespace bmolab {

Grid::Grid(int dim, double side, std::size_t cells_per_axis, Point origin)
    : dim_(dim), side_(side), n_(cells_per_axis), origin_(origin) {
  if (dim != 1 && dim != 2) throw DomainError("grid dimension must be 1 or 2");
  if (!(side > 0.0) || !std::isfinite(side)) throw DomainError("grid side must be positive");
  if (cells_per_axis == 0 || !std::has_single_bit(cells_per_axis)) {
    throw DomainError("cells per axis must be a power of two");
  }
  if (cell_count() > kMaxCells) throw DomainError("grid exceeds the cell budget");
  if (dim == 1) origin_[1] = 0.0;
}

double Grid::cell_volume() const noexcept {
  const double h = spacing();
  return dim_ == 1 ? h : h * h;
}

std::size_t Grid::levels() const noexcept {
  return static_cast<std::size_t>(std::countr_zero(n_));
}

Point Grid::midpoint(std::size_t linear) const noexcept {
  const CellIndex c = unravel(linear);
  const double h = spacing();
  Point p{origin_[0] + (static_cast<double>(c[0]) + 0.5) * h, 0.0};
  if (dim_ == 2) p[1] = origin_[1] + (static_cast<double>(c[1]) + 0.5) * h;
  return p;
}

std::string to_string(const Grid& grid) {
  std::ostringstream os;
  os << "grid(dim=" << grid.dim() << ",N=" << grid.cells_per_axis() << ",L=" << grid.side()
     << ")";
  return os.str();
}

bool cube_fits(const Grid& grid, const Cube& cube) noexcept {
  if (cube.side == 0) return false;
  for (int a = 0; a < grid.dim(); ++a) {
    const auto k = static_cast<std::size_t>(a);
    if (cube.anchor[k] + cube.side > grid.cells_per_axis()) return false;
  }
  if (grid.dim() == 1 && cube.anchor[1] != 0) return false;
  return true;
}

void require_fits(const Grid& grid, const Cube& cube) {
  if (!cube_fits(grid, cube)) {
    throw DomainError("cube " + to_string(cube, grid.dim()) + " lies outside " + to_string(grid));
  }
}

std::size_t cube_cell_count(const Grid& grid, const Cube& cube) noexcept {
  return grid.dim() == 1 ? cube.side : cube.side * cube.side;
}

double cube_volume(const Grid& grid, const Cube& cube) noexcept {
  return static_cast<double>(cube_cell_count(grid, cube)) * grid.cell_volume();
}

Cube whole_grid(const Grid& grid) noexcept { return Cube{{0, 0}, grid.cells_per_axis()}; }

std::string to_string(const Cube& cube, int dim) {
  std::ostringstream os;
  os << "[";
  for (int a = 0; a < dim; ++a) os << (a ? "," : "") << cube.anchor[static_cast<std::size_t>(a)];
  os << "]+" << cube.side;
  return os.str();
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::dyadic: return "dyadic";
    case FamilyKind::sliding: return "sliding";
    case FamilyKind::explicit_list: return "explicit";
  }
  return "unknown";
}

namespace {

std::size_t parse_size(std::string_view text) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

FamilySpec FamilySpec::parse(std::string_view text) {
  if (text == "dyadic") return dyadic();
  if (text == "sliding") return sliding_all();
  constexpr std::string_view prefix = "sliding:";
  if (!text.starts_with(prefix)) throw ConfigError("unknown cube family '" + std::string(text) + "'");
  FamilySpec spec{FamilyKind::sliding, {}, false, 1};
  std::string_view rest = text.substr(prefix.size());
  while (!rest.empty()) {
    const auto semi = rest.find(';');
    std::string_view item = rest.substr(0, semi);
    rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("malformed family option '" + std::string(item) + "'");
    const std::string_view key = item.substr(0, eq);
    std::string_view value = item.substr(eq + 1);
    if (key == "stride") {
      spec.stride = parse_size(value);
    } else if (key == "sides") {
      if (value == "all") {
        spec.all_sides = true;
        continue;
      }
      while (!value.empty()) {
        const auto comma = value.find(',');
        spec.window_sides.push_back(parse_size(value.substr(0, comma)));
        value = comma == std::string_view::npos ? std::string_view{} : value.substr(comma + 1);
      }
    } else {
      throw ConfigError("unknown family option '" + std::string(key) + "'");
    }
  }
  return spec;
}

std::string FamilySpec::descriptor() const {
  if (kind == FamilyKind::dyadic) return "dyadic";
  if (kind == FamilyKind::explicit_list) return "explicit";
  std::ostringstream os;
  os << "sliding(sides=";
  if (all_sides) {
    os << "all";
  } else {
    for (std::size_t i = 0; i < window_sides.size(); ++i) os << (i ? "," : "") << window_sides[i];
  }
  os << ";stride=" << stride << ")";
  return os.str();
}

CubeFamily::CubeFamily(const Grid& grid, FamilyKind kind, std::vector<Cube> cubes,
                       std::string descriptor)
    : grid_(grid), kind_(kind), cubes_(std::move(cubes)), descriptor_(std::move(descriptor)) {
  if (cubes_.empty()) throw ConfigError("cube family is empty");
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  Digest digest;
  digest.add(descriptor_);
  for (const Cube& q : cubes_) {
    require_fits(grid_, q);
    if (!seen.emplace(q.anchor[0], q.anchor[1], q.side).second) {
      throw ConfigError("duplicate cube " + to_string(q, grid_.dim()) + " in family");
    }
    digest.add(static_cast<std::uint64_t>(q.anchor[0]))
        .add(static_cast<std::uint64_t>(q.anchor[1]))
        .add(static_cast<std::uint64_t>(q.side));
  }
  digest_ = digest.value();
}

CubeFamily CubeFamily::of(const Grid& grid, std::vector<Cube> cubes) {
  return CubeFamily(grid, FamilyKind::explicit_list, std::move(cubes), "explicit");
}

namespace {

void push_windows(const Grid& grid, std::size_t side, std::size_t stride, std::vector<Cube>& out) {
  const std::size_t n = grid.cells_per_axis();
  const std::size_t last = n - side;
  if (grid.dim() == 1) {
    for (std::size_t i = 0; i <= last; i += stride) out.push_back(Cube{{i, 0}, side});
    return;
  }
  for (std::size_t j = 0; j <= last; j += stride) {
    for (std::size_t i = 0; i <= last; i += stride) out.push_back(Cube{{i, j}, side});
  }
}

}  // namespace

CubeFamily enumerate_cubes(const Grid& grid, const FamilySpec& spec) {
  const std::size_t n = grid.cells_per_axis();
  std::vector<Cube> cubes;
  switch (spec.kind) {
    case FamilyKind::dyadic:
      for (std::size_t side = n; side >= 1; side /= 2) push_windows(grid, side, side, cubes);
      return CubeFamily(grid, FamilyKind::dyadic, std::move(cubes), spec.descriptor());
    case FamilyKind::sliding: {
      if (spec.stride == 0) throw ConfigError("sliding stride must be at least 1");
      std::vector<std::size_t> sides = spec.window_sides;
      if (spec.all_sides) {
        sides.clear();
        for (std::size_t s = 1; s <= n; ++s) sides.push_back(s);
      }
      if (sides.empty()) throw ConfigError("sliding family needs at least one window side");
      for (std::size_t s : sides) {
        if (s == 0 || s > n) throw ConfigError("window side outside [1, N]");
      }
      std::sort(sides.begin(), sides.end(), std::greater<>());
      sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
      for (std::size_t s : sides) push_windows(grid, s, spec.stride, cubes);
      return CubeFamily(grid, FamilyKind::sliding, std::move(cubes), spec.descriptor());
    }
    case FamilyKind::explicit_list:
      break;
  }
  throw ConfigError("explicit families are built with CubeFamily::of");
}

void require_same_grid(const Grid& a, const Grid& b, std::string_view what) {
  if (!(a == b)) {
    throw ConfigError(std::string(what) + ": functions live on different grids (" + to_string(a) +
                      " vs " + to_string(b) + ")");
  }
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cell_count()) {
    throw ConfigError("grid function has " + std::to_string(values_.size()) + " values, grid has " +
                      std::to_string(grid_.cell_count()) + " cells");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("grid function values must be finite");
  }
}

GridFunction GridFunction::constant(const Grid& grid, double value) {
  return GridFunction(grid, std::vector<double>(grid.cell_count(), value));
}

GridFunction GridFunction::abs() const {
  return map([](double v) { return std::abs(v); });
}

GridFunction GridFunction::pow(double exponent) const {
  return map([exponent](double v) { return std::pow(std::abs(v), exponent); });
}

bool GridFunction::is_constant() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [&](double v) { return v == values_.front(); });
}

double GridFunction::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

template <class Op>
GridFunction zip(const GridFunction& a, const GridFunction& b, Op op, std::string_view what) {
  require_same_grid(a.grid(), b.grid(), what);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return GridFunction(a.grid(), std::move(out));
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  return zip(a, b, std::plus<>(), "sum");
}
GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  return zip(a, b, std::minus<>(), "difference");
}
GridFunction operator*(const GridFunction& a, const GridFunction& b) {
  return zip(a, b, std::multiplies<>(), "product");
}
GridFunction operator/(const GridFunction& a, const GridFunction& b) {
  return zip(a, b, std::divides<>(), "quotient");
}
GridFunction operator*(double c, const GridFunction& f) {
  return f.map([c](double v) { return c * v; });
}
GridFunction operator+(const GridFunction& f, double c) {
  return f.map([c](double v) { return v + c; });
}

CubeSums::CubeSums(const Grid& grid, std::span<const double> cell_values)
    : n_(grid.cells_per_axis()), dim_(grid.dim()) {
  if (cell_values.size() != grid.cell_count()) throw ConfigError("cube sums: size mismatch");
  if (dim_ == 1) {
    table_.assign(n_ + 1, 0.0L);
    for (std::size_t i = 0; i < n_; ++i) table_[i + 1] = table_[i] + cell_values[i];
    return;
  }
  const std::size_t w = n_ + 1;
  table_.assign(w * w, 0.0L);
  for (std::size_t j = 0; j < n_; ++j) {
    long double row = 0.0L;
    for (std::size_t i = 0; i < n_; ++i) {
      row += cell_values[j * n_ + i];
      table_[(j + 1) * w + (i + 1)] = table_[j * w + (i + 1)] + row;
    }
  }
}

double CubeSums::sum(const Cube& q) const noexcept {
  if (dim_ == 1) return static_cast<double>(table_[q.anchor[0] + q.side] - table_[q.anchor[0]]);
  const std::size_t w = n_ + 1;
  const std::size_t i0 = q.anchor[0], j0 = q.anchor[1];
  const std::size_t i1 = i0 + q.side, j1 = j0 + q.side;
  return static_cast<double>(table_[j1 * w + i1] - table_[j0 * w + i1] - table_[j1 * w + i0] +
                             table_[j0 * w + i0]);
}

namespace {

long double cube_sum(const GridFunction& f, const Cube& q) {
  long double s = 0.0L;
  const auto values = f.values();
  for_each_cell(f.grid(), q, [&](std::size_t i) { s += values[i]; });
  return s;
}

}  // namespace

double average(const GridFunction& f, const Cube& cube) {
  require_fits(f.grid(), cube);
  return static_cast<double>(cube_sum(f, cube) /
                             static_cast<long double>(cube_cell_count(f.grid(), cube)));
}

double integral(const GridFunction& f, const Cube& cube) {
  require_fits(f.grid(), cube);
  return static_cast<double>(cube_sum(f, cube) * f.grid().cell_volume());
}

double weighted_measure(const GridFunction& weight, const Cube& cube) {
  return integral(weight, cube);
}

}  // namespace bmolab
