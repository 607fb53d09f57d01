#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bmolab/core.hpp"
#include "bmolab/parallel.hpp"

namespace bmolab {

/// Convolution-type bilinear kernel K(u, v) with u = x - y1, v = x - y2.
/// Homogeneous of degree -2n + alpha. The declared constants bound
///   |K(u,v)| <= size_constant / (|u| + |v|)^{2n - alpha}
///   |K(u',v') - K(u,v)| <= regularity_constant |e|^gamma / (|u| + |v|)^{2n - alpha + gamma}
/// for shifts of one or both arguments by e with |e| <= max(|u|, |v|)/2.
struct BilinearKernel {
  std::string name;
  int dim = 1;
  double alpha = 0.0;
  double gamma = 1.0;
  double size_constant = 1.0;
  double regularity_constant = 1.0;
  std::function<double(const Point& u, const Point& v)> evaluate;

  double homogeneity_degree() const noexcept { return -2.0 * dim + alpha; }
  double operator()(const Point& u, const Point& v) const { return evaluate(u, v); }
};

/// (|u| + |v|)^{-(2n - alpha)}, 0 < alpha < 2n.
BilinearKernel kernel_ialpha(int dim, double alpha);
/// (u - v) / (u^2 + v^2)^{3/2} on the line.
BilinearKernel kernel_odd1d();
/// (u1 + v1) / (|u|^2 + |v|^2)^{5/2} in the plane.
BilinearKernel kernel_riesz2d();
BilinearKernel scaled(const BilinearKernel& k, double c);

// "ialpha:alpha=1", "odd1d", "riesz2d"; `dim` is used by ialpha and checked by the others.
BilinearKernel kernel_from_preset(std::string_view preset, int dim);

struct KernelCheck {
  std::size_t samples = 0;
  double size_quotient = 0.0;        // max |K| (|u|+|v|)^{2n-alpha}
  double regularity_quotient = 0.0;  // max |dK| (|u|+|v|)^{2n-alpha+gamma} / |e|^gamma
  bool passes = false;               // both within 5% of the declared constants
};

KernelCheck verify_kernel(const BilinearKernel& k, std::size_t samples, std::uint64_t seed);

// Largest relative deviation from K(tu, tv) = t^degree K(u, v) over random samples.
double homogeneity_error(const BilinearKernel& k, std::size_t samples, std::uint64_t seed);

enum class Boundary { truncated, periodic };

std::string_view to_string(Boundary b);

/// Discrete T(f1, f2)(x) = h^{2 dim} sum_{y1, y2} K(x - y1, x - y2) f1(y1) f2(y2)
/// over cell midpoints, with the single term y1 = y2 = x left out. Periodic
/// mode wraps each cell offset into [-N/2, N/2).
class BilinearOperator {
 public:
  static constexpr std::size_t kTableBudget = std::size_t{1} << 22;

  BilinearOperator(BilinearKernel kernel, const Grid& grid, Boundary boundary = Boundary::truncated);

  const BilinearKernel& kernel() const noexcept { return kernel_; }
  const Grid& grid() const noexcept { return grid_; }
  Boundary boundary() const noexcept { return boundary_; }
  bool tabulated() const noexcept { return !table_.empty(); }

  // K(x - y1, x - y2) for cells x, y1, y2; zero when y1 = y2 = x.
  double weight(std::size_t x, std::size_t y1, std::size_t y2) const {
    if (y1 == x && y2 == x) return 0.0;
    if (grid_.dim() == 1) {
      const long d1 = offset(x, y1);
      const long d2 = offset(x, y2);
      if (!table_.empty()) return table_[static_cast<std::size_t>((d1 + shift_) * span_ + d2 + shift_)];
      return direct(d1, 0, d2, 0);
    }
    const std::size_t n = grid_.cells_per_axis();
    const long d1x = offset(x % n, y1 % n);
    const long d1y = offset(x / n, y1 / n);
    const long d2x = offset(x % n, y2 % n);
    const long d2y = offset(x / n, y2 / n);
    if (!table_.empty()) {
      const long t = ((d1x + shift_) * span_ + d1y + shift_) * span_ * span_ +
                     (d2x + shift_) * span_ + d2y + shift_;
      return table_[static_cast<std::size_t>(t)];
    }
    return direct(d1x, d1y, d2x, d2y);
  }

  /// out[k] = h^{2 dim} sum_i a(x, i) sum_j K(x - s1[i], x - s2[j]) b(x, j)
  /// with x = out_cells[k]; the callbacks receive positions into s1 and s2.
  template <class T, class A, class B>
  std::vector<T> apply(std::span<const std::size_t> out_cells, std::span<const std::size_t> s1,
                       A&& a, std::span<const std::size_t> s2, B&& b) const {
    std::vector<T> out(out_cells.size(), T{});
    const double scale = grid_.cell_volume() * grid_.cell_volume();
    parallel_for(out_cells.size(), [&](std::size_t k) {
      const std::size_t x = out_cells[k];
      std::vector<T> right(s2.size());
      for (std::size_t j = 0; j < s2.size(); ++j) right[j] = b(x, j);
      T acc{};
      for (std::size_t i = 0; i < s1.size(); ++i) {
        const std::size_t y1 = s1[i];
        T inner{};
        for (std::size_t j = 0; j < s2.size(); ++j) inner += weight(x, y1, s2[j]) * right[j];
        acc += a(x, i) * inner;
      }
      out[k] = acc * scale;
    });
    return out;
  }

 private:
  // Signed cell offset a - b along one axis, wrapped in periodic mode.
  long offset(std::size_t a, std::size_t b) const noexcept {
    long d = static_cast<long>(a) - static_cast<long>(b);
    if (boundary_ == Boundary::periodic) {
      const auto n = static_cast<long>(grid_.cells_per_axis());
      d = ((d % n) + n) % n;
      if (n > 1 && d >= n / 2) d -= n;
    }
    return d;
  }
  double direct(long d1x, long d1y, long d2x, long d2y) const;

  BilinearKernel kernel_;
  Grid grid_;
  Boundary boundary_;
  long span_ = 0;  // table extent per axis
  long shift_ = 0; // added to an offset to get its table coordinate
  std::vector<double> table_;
};

// Cells where the function is nonzero, in ascending order.
std::vector<std::size_t> support(const GridFunction& f);
std::vector<std::size_t> all_cells(const Grid& grid);

GridFunction eval_bilinear(const BilinearOperator& op, const GridFunction& f1, const GridFunction& f2);
GridFunction eval_bilinear(const BilinearKernel& k, const GridFunction& f1, const GridFunction& f2,
                           Boundary boundary = Boundary::truncated);

enum class CommutatorSlot { first, second, iterated };

std::string_view to_string(CommutatorSlot slot);
CommutatorSlot parse_commutator_slot(std::string_view text);

enum class CommutatorForm {
  expanded,    // products of b with T applied to b-multiplied inputs
  difference,  // one sum with (b(x) - b(y1)) and/or (b(x) - b(y2)) inside
};

/// first: b T(f1,f2) - T(b f1, f2); second: b T(f1,f2) - T(f1, b f2);
/// iterated: b^2 T(f1,f2) - b T(b f1,f2) - b T(f1, b f2) + T(b f1, b f2).
GridFunction commutator(CommutatorSlot slot, const GridFunction& b, const BilinearOperator& op,
                        const GridFunction& f1, const GridFunction& f2,
                        CommutatorForm form = CommutatorForm::expanded);

/// Difference-form commutator with complex inputs given on explicit supports and
/// evaluated only at out_cells.
std::vector<std::complex<double>> commutator_on(
    CommutatorSlot slot, const GridFunction& b, const BilinearOperator& op,
    std::span<const std::size_t> s1, std::span<const std::complex<double>> f1,
    std::span<const std::size_t> s2, std::span<const std::complex<double>> f2,
    std::span<const std::size_t> out_cells);

}  // namespace bmolab
