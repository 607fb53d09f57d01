#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bmolab/core.hpp"
#include "bmolab/norms.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

/// Norm pairs claimed equivalent for w in A_1:
///   weak_type(p):      strong(1) vs weak(p), 1 < p
///   sub_unit_power(r): strong(1) vs strong(r), 0 < r < 1
///   centered(r):       strong(r) vs inf_centered(r), 0 < r < 1
///   power(p):          strong(1) vs strong(p), 1 < p
///   self(p):           strong(p) vs strong(p)
enum class Pairing { weak_type, sub_unit_power, centered, power, self };

struct EquivalenceSpec {
  Pairing pairing = Pairing::power;
  double parameter = 2.0;

  // "weak_type:2", "sub_unit_power:0.5", "centered:0.25", "power:4", "self:2".
  static EquivalenceSpec parse(std::string_view text);
  std::pair<BmoVariant, BmoVariant> norms() const;
  std::string descriptor() const;
};

struct EquivalenceReport {
  EquivalenceSpec spec;
  BmoVariant norm_a;
  BmoVariant norm_b;
  std::vector<std::size_t> members;  // corpus indices with norm_b > 0
  std::vector<double> ratios;        // norm_a / norm_b, aligned with members
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::string corpus;
  std::string weight;
  std::string family;
  double a1 = 0.0;

  double band() const noexcept { return max_ratio / min_ratio; }
};

/// DegenerateError when every corpus member has norm_b == 0.
EquivalenceReport equivalence_experiment(const EquivalenceSpec& spec, const Weight& w,
                                         std::span<const GridFunction> corpus,
                                         std::string corpus_descriptor, const CubeFamily& cubes);

}  // namespace bmolab
