#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "bmolab/core.hpp"
#include "bmolab/czo.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

// A point of R^{2n}: the first n slots belong to y1, the next n to y2.
using Pair = std::array<double, 4>;

struct FourierTerm {
  std::complex<double> a;
  Pair v{};  // frequency
};

/// 1/K(w) ~ sum_j a_j exp(i v_j . w) on the ball B(center, delta sqrt(2n)).
struct FourierExpansion {
  int dim = 1;
  Pair center{};
  double delta = 0.0;
  double radius = 0.0;           // delta sqrt(2n)
  std::size_t samples_per_axis = 0;
  std::vector<FourierTerm> spectrum;  // every computed term, |a_j| descending
  std::size_t truncation = 0;    // J
  double alias_bound = 0.0;      // twice the worst full-series error seen on the ball
  double tail_bound = 0.0;       // sum_{j > J} |a_j| + alias_bound
  double kernel_max = 0.0;       // bound on |K| over the ball from the size constant

  std::size_t size() const noexcept { return std::min(truncation, spectrum.size()); }
  // Same spectrum, truncated at J, with the tail recomputed.
  FourierExpansion truncated(std::size_t J) const;
  std::complex<double> evaluate(const Pair& w) const;
  double coefficient_sum() const;  // sum_{j <= J} |a_j|
};

/// Expands 1/K on B(center, delta sqrt(2n)). Off the ball the reciprocal is
/// blended into the constant 1/K(center) by a C^2 radial cutoff that reaches
/// the constant at 1.5 times the radius; the result is sampled on a periodic
/// box of side 3 radius and transformed with FFTW. ZeroDivisorError when K
/// vanishes or changes sign inside 1.5 radius; DomainError unless
/// |center| > 2 sqrt(n) and 0 < delta < 1.
FourierExpansion expand_reciprocal_kernel(const BilinearKernel& k, const Pair& center, double delta,
                                          std::size_t J, std::size_t samples_per_axis = 0);

/// Diagonal center (z0, z0).
FourierExpansion expand_reciprocal_kernel(const BilinearKernel& k, const Point& z0, double delta,
                                          std::size_t J);

/// Tries the preset (center, delta) list in order and returns the first
/// admissible expansion. Centers: diagonal (3,..,3), then (3,..,-3,..) and
/// (-3,..,3,..); deltas 1/2 then 1/4.
FourierExpansion find_admissible_expansion(const BilinearKernel& k, std::size_t J);

struct Reconstruction {
  bool iterated = false;
  Cube q;
  Cube q1;  // Q'_1 = Q(x0 - r z1^1, r)
  Cube q2;  // Q'_2 = Q(x0 - r z1^2, r)
  std::vector<std::size_t> cells;  // cells of Q
  std::vector<double> value;       // real part of the series
  std::vector<double> imag;        // imaginary part (vanishes up to the error)
  std::vector<double> target;      // |b - b_{Q'_1}|, or |(b - b_{Q'_1})(b - b_{Q'_2})|
  std::vector<double> bound;       // declared error bound per cell
  double max_error = 0.0;
  double max_bound = 0.0;
  double max_target = 0.0;
  double relative_error() const noexcept { return max_target > 0.0 ? max_error / max_target : max_error; }
};

/// Evaluates sum_{j<=J} a_j [b,T]_1(g_j, h_j)(x) m_j(x) on Q, with the
/// prefactor (r/delta)^{2n-alpha} / (|Q'_1||Q'_2|), where
///   g_j(y1) = exp(-i (delta/r) v_j^1 . y1) 1_{Q'_1}, h_j(y2) = exp(-i (delta/r) v_j^2 . y2) 1_{Q'_2},
///   m_j(x) = exp(i (delta/r) (v_j^1 + v_j^2) . x) s(x).
/// The iterated flag uses the two-sided commutator and the product target.
/// GeometryError when a Q' leaves the grid or center/delta is not a whole
/// number of cells per unit side.
Reconstruction reconstruct_oscillation(const GridFunction& b, const BilinearOperator& op,
                                       const Cube& q, const FourierExpansion& expansion,
                                       bool iterated = false);

struct OscillationEstimate {
  double weak_series = 0.0;    // w(Q)^{-1/p} || series/w 1_Q ||_{L^{p,infty}(w)}
  double weak_target = 0.0;
  double morrey_series = 0.0;  // (1/w(Q) int_Q (|series|/w)^q w)^{1/q}
  double morrey_target = 0.0;
};

OscillationEstimate estimate_oscillation(const Reconstruction& rec, const Weight& w, double p,
                                         double q);

}  // namespace bmolab
