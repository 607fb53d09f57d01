#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bmolab/core.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

enum class MaximalKind {
  hl,           // M
  weighted,     // M_w: averages against w dx
  sharp,        // M#: mean oscillation about f_Q
  hl_delta,     // M_d f = M(|f|^d)^{1/d}
  sharp_delta,  // M#_d f = M#(|f|^d)^{1/d}
  weighted_s,   // M_{w,s} f = M_w(|f|^s)^{1/s}
  sharp_inf,    // inf_c mean |f - c|, for cross-checks
};

struct MaximalSpec {
  MaximalKind kind = MaximalKind::hl;
  double parameter = 1.0;

  static MaximalSpec hl() { return {MaximalKind::hl, 1.0}; }
  static MaximalSpec weighted() { return {MaximalKind::weighted, 1.0}; }
  static MaximalSpec sharp() { return {MaximalKind::sharp, 1.0}; }
  static MaximalSpec hl_delta(double d) { return {MaximalKind::hl_delta, d}; }
  static MaximalSpec sharp_delta(double d) { return {MaximalKind::sharp_delta, d}; }
  static MaximalSpec weighted_s(double s) { return {MaximalKind::weighted_s, s}; }
  static MaximalSpec sharp_inf() { return {MaximalKind::sharp_inf, 1.0}; }

  // "hl", "weighted", "sharp", "sharp_inf", "hl_delta:0.5", "sharp_delta:0.5", "weighted_s:1.5".
  static MaximalSpec parse(std::string_view text);

  bool needs_weight() const noexcept {
    return kind == MaximalKind::weighted || kind == MaximalKind::weighted_s;
  }
  void validate() const;
  std::string descriptor() const;
};

enum class MaximalPath {
  automatic,    // dyadic tree for dyadic families, scatter otherwise
  naive,        // per cell, scan every family cube
  scatter,      // per cube, push its value into every cell it covers
  dyadic_tree,  // per cell, walk the dyadic ancestors
};

/// Every kind consumes |f|. The weight must be supplied exactly for the
/// weighted kinds (ConfigError otherwise).
GridFunction maximal(const GridFunction& f, const MaximalSpec& spec, const Weight* w,
                     const CubeFamily& cubes, MaximalPath path = MaximalPath::automatic);

inline GridFunction maximal(const GridFunction& f, const MaximalSpec& spec,
                            const CubeFamily& cubes, MaximalPath path = MaximalPath::automatic) {
  return maximal(f, spec, nullptr, cubes, path);
}

/// ||M_d f||_{L^p(w)} / ||M#_d f||_{L^p(w)}. UndefinedRatioError when the
/// denominator vanishes.
double fefferman_stein_ratio(const GridFunction& f, const Weight& w, double p, double delta,
                             const CubeFamily& cubes);

}  // namespace bmolab
