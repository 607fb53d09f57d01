#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bmolab/error.hpp"

namespace bmolab {

// Coordinates and cell indices carry two slots; only the first dim() are used.
using Point = std::array<double, 2>;
using CellIndex = std::array<std::size_t, 2>;

/// Uniform box grid over [origin, origin + side)^dim with N cells per axis.
/// Values live at cell midpoints; linear cell index runs axis 0 fastest.
class Grid {
 public:
  static constexpr std::size_t kMaxCells = std::size_t{1} << 22;

  Grid(int dim, double side, std::size_t cells_per_axis, Point origin = {0.0, 0.0});

  int dim() const noexcept { return dim_; }
  double side() const noexcept { return side_; }
  std::size_t cells_per_axis() const noexcept { return n_; }
  double spacing() const noexcept { return side_ / static_cast<double>(n_); }
  const Point& origin() const noexcept { return origin_; }

  std::size_t cell_count() const noexcept { return dim_ == 1 ? n_ : n_ * n_; }
  double cell_volume() const noexcept;
  // log2 of cells_per_axis.
  std::size_t levels() const noexcept;

  CellIndex unravel(std::size_t linear) const noexcept {
    return dim_ == 1 ? CellIndex{linear, 0} : CellIndex{linear % n_, linear / n_};
  }
  std::size_t ravel(const CellIndex& cell) const noexcept {
    return dim_ == 1 ? cell[0] : cell[0] + n_ * cell[1];
  }
  Point midpoint(std::size_t linear) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dim_;
  double side_;
  std::size_t n_;
  Point origin_;
};

std::string to_string(const Grid& grid);

/// Half-open axis-aligned box of whole cells: [anchor, anchor + side)^dim.
struct Cube {
  CellIndex anchor{0, 0};
  std::size_t side = 1;

  bool contains(const CellIndex& cell, int dim) const noexcept {
    for (int a = 0; a < dim; ++a) {
      const auto k = static_cast<std::size_t>(a);
      if (cell[k] < anchor[k] || cell[k] >= anchor[k] + side) return false;
    }
    return true;
  }

  friend bool operator==(const Cube&, const Cube&) = default;
};

bool cube_fits(const Grid& grid, const Cube& cube) noexcept;
// Throws DomainError when the cube is empty or leaves the grid.
void require_fits(const Grid& grid, const Cube& cube);
std::size_t cube_cell_count(const Grid& grid, const Cube& cube) noexcept;
double cube_volume(const Grid& grid, const Cube& cube) noexcept;
Cube whole_grid(const Grid& grid) noexcept;
std::string to_string(const Cube& cube, int dim);

template <class F>
void for_each_cell(const Grid& grid, const Cube& cube, F&& visit) {
  const std::size_t n = grid.cells_per_axis();
  if (grid.dim() == 1) {
    for (std::size_t i = cube.anchor[0]; i < cube.anchor[0] + cube.side; ++i) visit(i);
    return;
  }
  for (std::size_t j = cube.anchor[1]; j < cube.anchor[1] + cube.side; ++j) {
    const std::size_t row = j * n;
    for (std::size_t i = cube.anchor[0]; i < cube.anchor[0] + cube.side; ++i) visit(row + i);
  }
}

enum class FamilyKind { dyadic, sliding, explicit_list };

std::string_view to_string(FamilyKind kind);

/// Recipe for a CubeFamily. Sliding families list window sides explicitly or
/// ask for every side 1..N.
struct FamilySpec {
  FamilyKind kind = FamilyKind::dyadic;
  std::vector<std::size_t> window_sides;
  bool all_sides = false;
  std::size_t stride = 1;

  static FamilySpec dyadic() { return {}; }
  static FamilySpec sliding(std::vector<std::size_t> sides, std::size_t stride = 1) {
    return {FamilyKind::sliding, std::move(sides), false, stride};
  }
  static FamilySpec sliding_all(std::size_t stride = 1) {
    return {FamilyKind::sliding, {}, true, stride};
  }

  // Accepts "dyadic", "sliding", "sliding:sides=2,4,8;stride=1".
  static FamilySpec parse(std::string_view text);
  std::string descriptor() const;
};

/// Finite stand-in for "sup over all cubes". Ordered by side descending, then
/// by anchor (axis 0 fastest); sup-type reductions break ties toward the
/// earliest cube in this order.
class CubeFamily {
 public:
  CubeFamily(const Grid& grid, FamilyKind kind, std::vector<Cube> cubes, std::string descriptor);

  static CubeFamily of(const Grid& grid, std::vector<Cube> cubes);

  const Grid& grid() const noexcept { return grid_; }
  FamilyKind kind() const noexcept { return kind_; }
  std::span<const Cube> cubes() const noexcept { return cubes_; }
  std::size_t size() const noexcept { return cubes_.size(); }
  const Cube& operator[](std::size_t i) const noexcept { return cubes_[i]; }
  const std::string& descriptor() const noexcept { return descriptor_; }
  std::uint64_t digest() const noexcept { return digest_; }

 private:
  Grid grid_;
  FamilyKind kind_;
  std::vector<Cube> cubes_;
  std::string descriptor_;
  std::uint64_t digest_ = 0;
};

CubeFamily enumerate_cubes(const Grid& grid, const FamilySpec& spec);

void require_same_grid(const Grid& a, const Grid& b, std::string_view what);

/// Real function sampled at cell midpoints. Values are always finite.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);

  static GridFunction constant(const Grid& grid, double value);

  template <class F>
  static GridFunction sample(const Grid& grid, F&& fn) {
    std::vector<double> values(grid.cell_count());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(grid.midpoint(i));
    return GridFunction(grid, std::move(values));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  template <class F>
  GridFunction map(F&& fn) const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(values_[i]);
    return GridFunction(grid_, std::move(out));
  }
  GridFunction abs() const;
  GridFunction pow(double exponent) const;  // |f|^exponent

  bool is_constant() const noexcept;
  double max_abs() const noexcept;

 private:
  Grid grid_;
  std::vector<double> values_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(const GridFunction& a, const GridFunction& b);
GridFunction operator/(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double c, const GridFunction& f);
GridFunction operator+(const GridFunction& f, double c);

/// Complex-valued companion used by oscillating test functions.
struct ComplexGridFunction {
  Grid grid;
  std::vector<std::complex<double>> values;

  explicit ComplexGridFunction(const Grid& g)
      : grid(g), values(g.cell_count(), std::complex<double>{0.0, 0.0}) {}
};

/// Plain cell-value sums over cubes in O(1) via a summed-area table.
class CubeSums {
 public:
  CubeSums(const Grid& grid, std::span<const double> cell_values);
  double sum(const Cube& cube) const noexcept;

 private:
  std::size_t n_;
  int dim_;
  std::vector<long double> table_;
};

// Mean of the cell values of f inside Q (midpoint quadrature of f_Q).
double average(const GridFunction& f, const Cube& cube);
// h^dim * sum of cell values inside Q.
double integral(const GridFunction& f, const Cube& cube);
// w(Q) = h^dim * sum of w over Q; w is expected to be a positive weight.
double weighted_measure(const GridFunction& weight, const Cube& cube);

}  // namespace bmolab
