#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "bmolab/core.hpp"

namespace bmolab {

/// Strictly positive weight on a grid. Muckenhoupt constants are cached per
/// cube family (keyed by the family digest); copies share the cache, which is
/// safe because the values are immutable.
class Weight {
 public:
  explicit Weight(GridFunction values, std::string descriptor = "custom");

  const GridFunction& function() const noexcept { return fn_; }
  const Grid& grid() const noexcept { return fn_.grid(); }
  std::span<const double> values() const noexcept { return fn_.values(); }
  double operator[](std::size_t i) const noexcept { return fn_[i]; }
  const std::string& descriptor() const noexcept { return descriptor_; }
  std::uint64_t digest() const noexcept { return digest_; }

  struct Cache;

 private:
  friend double a1_constant(const Weight&, const CubeFamily&);
  friend double ap_constant(const Weight&, double, const CubeFamily&);

  GridFunction fn_;
  std::string descriptor_;
  std::uint64_t digest_ = 0;
  std::shared_ptr<Cache> cache_;
};

Weight unit_weight(const Grid& grid);
Weight constant_weight(const Grid& grid, double c);
// Value `left` where the axis-0 coordinate is below the box midpoint, `right` elsewhere.
Weight two_valued_weight(const Grid& grid, double left, double right);
Weight scaled(const Weight& w, double c);

/// w(x) = max(|x - center|, h)^exponent. The clamp at one grid spacing is part
/// of the weight. With a1_mode the exponent must lie in (-dim, 0].
Weight make_power_weight(const Grid& grid, double exponent, const Point& center,
                         bool a1_mode = true);

// "const", "const:c=2", "two-valued:left=1,right=3", "power:a=-0.5,center=0.5".
// The power center is one coordinate applied to every axis (physical units).
Weight weight_from_preset(const Grid& grid, std::string_view preset);

/// max over the family of avg(w) * avg(w^{-1/(p-1)})^{p-1}; p must exceed 1.
double ap_constant(const Weight& w, double p, const CubeFamily& cubes);
/// max over the family of avg(w) * max over cells of 1/w.
double a1_constant(const Weight& w, const CubeFamily& cubes);

// Uncached evaluations, used to check the cache.
double compute_ap_constant(const Weight& w, double p, const CubeFamily& cubes);
double compute_a1_constant(const Weight& w, const CubeFamily& cubes);

double weighted_measure(const Weight& w, const Cube& cube);

}  // namespace bmolab
