#pragma once

#include "bmolab/core.hpp"
#include "bmolab/czo.hpp"
#include "bmolab/norms.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

/// 2 (q1/(q2 - q1))^{1/q2}
double lemma1_constant(double q1, double q2);

struct Lemma1Report {
  double q1 = 0.0;
  double q2 = 0.0;
  double constant = 0.0;
  NormReport strong;  // BMO^{q1}(w)
  NormReport weak;    // BMO_X(w), X = L^{q2,infty}(w)
  double lhs = 0.0;
  double rhs = 0.0;
  bool passes = false;  // lhs <= rhs with 1e-9 relative slack
};

Lemma1Report check_lemma1(const GridFunction& f, const Weight& w, double q1, double q2,
                          const CubeFamily& cubes);

struct SharpBoundReport {
  CommutatorSlot slot = CommutatorSlot::first;
  double s = 0.0;
  double bmo_b = 0.0;           // strong(1) norm of b
  double constant = 0.0;        // max over cells of lhs / rhs
  std::size_t compared = 0;     // cells with rhs > 0
  std::size_t hard_failures = 0;  // cells with rhs == 0 < lhs
  std::size_t worst_cell = 0;
};

/// Pointwise sharp-function bounds for commutators. For the first slot
///   lhs = M#_{1/2}([b,T]_1(f1,f2)), rhs = |b| w (M(T(f1,f2)) + M_{w,s} f1 M f2),
/// the second slot swaps which input carries M_{w,s}, and the iterated form uses
///   lhs = M#_{1/3}([b,b,T]), rhs = w^2 |b|^2 M(T) + w |b| (M_{1/2}[b,T]_1 + M_{1/2}[b,T]_2)
///         + w^2 |b|^2 M_{w,s} f1 M_{w,s} f2
/// with |b| the strong(1) norm of b over the family. DegenerateError for constant b.
SharpBoundReport check_pointwise_sharp_bound(const GridFunction& b, const Weight& w,
                                             const BilinearOperator& op, const GridFunction& f1,
                                             const GridFunction& f2, double s, CommutatorSlot slot,
                                             const CubeFamily& cubes);

}  // namespace bmolab
