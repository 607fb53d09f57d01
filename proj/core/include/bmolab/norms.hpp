#pragma once

#include <string>
#include <string_view>

#include "bmolab/core.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

enum class BmoKind {
  strong,        // BMO^p(w): (1/w(Q) int_Q |f - f_Q|^p w^{1-p})^{1/p}
  weak,          // BMO_X(w), X = L^{p,infty}(w)
  inf_centered,  // BMO_r(w): inf over c of the mu-average of (|f - c|/w)^r, 0 < r < 1
  stromberg,     // unweighted inf_c inf{t : |{|f - c| > t} cap Q| < s|Q|}, 0 < s <= 1/2
};

struct BmoVariant {
  BmoKind kind = BmoKind::strong;
  double parameter = 1.0;

  static BmoVariant strong(double p) { return {BmoKind::strong, p}; }
  static BmoVariant weak(double p) { return {BmoKind::weak, p}; }
  static BmoVariant inf_centered(double r) { return {BmoKind::inf_centered, r}; }
  static BmoVariant stromberg(double s) { return {BmoKind::stromberg, s}; }

  // "strong:2", "weak:1.5", "inf_centered:0.5", "stromberg:0.25".
  static BmoVariant parse(std::string_view text);

  // Throws DomainError when the parameter is outside the variant's range.
  void validate() const;
  std::string name() const;
  std::string descriptor() const;

  friend bool operator==(const BmoVariant&, const BmoVariant&) = default;
};

struct NormReport {
  BmoVariant variant;
  double value = 0.0;
  Cube witness;
  std::string family;
};

/// (h^dim sum |f|^p w)^{1/p}, p > 0.
double lp_norm(const GridFunction& f, const Weight& w, double p);

/// sup over achieved levels l of l * w({|f| >= l})^{1/p}: the exact weak
/// L^{p,infty}(w) quasi-norm of step data.
double weak_lp_norm(const GridFunction& f, const Weight& w, double p);

/// p * int_0^infty l^{p-1} w({|f| > l}) dl summed exactly over the discrete
/// level sets. Equals lp_norm(f, w, p)^p.
double layer_cake_integral(const GridFunction& f, const Weight& w, double p);

/// max over the family of w(Q)^{1/p - 1/q} (int_Q |f|^q w)^{1/q}, 0 < q < p.
double morrey_norm(const GridFunction& f, const Weight& w, double p, double q,
                   const CubeFamily& cubes);

// The per-cube quantity whose sup is the BMO norm.
double bmo_cube_value(const GridFunction& f, const Weight& w, const BmoVariant& variant,
                      const Cube& cube);

NormReport bmo_norm(const GridFunction& f, const Weight& w, const BmoVariant& variant,
                    const CubeFamily& cubes);

// (1/mu(Q)) int_Q (|f - c|/w)^r dmu with dmu = w dx.
double center_objective(const GridFunction& f, const Weight& w, const Cube& cube, double r,
                        double c);

/// Minimizer of center_objective over c. Candidates are the cell values in Q
/// and the midpoints between consecutive sorted values; a golden-section
/// polish between the winner's neighbours is kept only if it improves. Ties go
/// to the smaller c.
double minimizing_center(const GridFunction& f, const Weight& w, const Cube& cube, double r);

}  // namespace bmolab
