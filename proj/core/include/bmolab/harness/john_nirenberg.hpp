#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bmolab/core.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

struct DecayPoint {
  double t = 0.0;
  double fraction = 0.0;
};

/// mu({x in Q : |f(x) - center|/w(x) > t}) / mu(Q) for each level t.
std::vector<DecayPoint> oscillation_distribution(const GridFunction& f, const Weight& w,
                                                 const Cube& q, double center,
                                                 std::span<const double> levels);

/// Levels starting at the median oscillation and growing by `ratio` while they
/// stay at or below the maximum oscillation.
std::vector<double> geometric_levels(const GridFunction& f, const Weight& w, const Cube& q,
                                     double center, double ratio = 1.5);

struct JNDecayFit {
  double c1 = 0.0;
  double c2 = 0.0;
  double residual = 0.0;  // max |log fraction - log(c1 e^{-c2 t})|
  std::vector<DecayPoint> points;
};

/// Least squares of log(fraction) against t over the points with positive
/// fraction. InsufficientDataError with fewer than three such points.
JNDecayFit fit_exponential_decay(std::span<const DecayPoint> points);

struct JNCheck {
  JNDecayFit fit;
  double center = 0.0;
  double worst_excess = 0.0;  // max fraction / (c1 e^{-c2 t})
  bool passes = false;        // c2 > 0 and every point below 1.1 c1 e^{-c2 t}
};

/// Full pipeline on the cube: minimizing center for exponent r, geometric
/// levels, least-squares fit and the envelope check.
JNCheck john_nirenberg_check(const GridFunction& f, const Weight& w, const Cube& q, double r);

}  // namespace bmolab
