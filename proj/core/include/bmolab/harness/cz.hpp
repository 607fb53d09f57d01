#pragma once

#include <vector>

#include "bmolab/core.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

struct CZDecomposition {
  Cube base;
  double threshold = 0.0;  // s
  double exponent = 0.0;   // r
  double center = 0.0;     // c_{Q0}, the minimizing center on the base cube
  std::vector<Cube> selected;
  std::vector<double> selected_averages;  // mu-average of (|f - c|/w)^r on each selected cube
};

/// Dyadic stopping time: split the base cube into 2^dim children and select a
/// child as soon as its mu-average of (|f - c|/w)^r exceeds s^r, recursing
/// otherwise down to single cells. Throws DomainError when the base cube is not
/// dyadic or when its own average already exceeds s^r.
CZDecomposition cz_decompose(const GridFunction& f, const Weight& w, const Cube& base, double s,
                             double r);

// f divided by its inf-centered r-norm over the family, so that norm equals 1.
GridFunction normalize_bmo_r(const GridFunction& f, const Weight& w, double r,
                             const CubeFamily& cubes);

struct CZCheck {
  bool disjoint = true;
  bool contained = true;
  bool lower = true;       // average > s^r on every selected cube
  bool upper = true;       // average <= 2^dim s^r on every selected cube
  bool complement = true;  // |f - c|/w <= s off the selected union
  double worst_upper = 0.0;  // max over selected cubes of average / (2^dim s^r)
  // max over selected cubes of average / ((mu(parent)/mu(Q)) s^r); the stopping
  // rule guarantees this stays at or below 1 for every weight.
  double worst_doubling = 0.0;
  bool passes() const noexcept { return disjoint && contained && lower && upper && complement; }
};

CZCheck validate_cz(const GridFunction& f, const Weight& w, const CZDecomposition& cz);

}  // namespace bmolab
