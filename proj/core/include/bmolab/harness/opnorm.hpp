#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bmolab/core.hpp"
#include "bmolab/czo.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

enum class ProbeOperator { plain, first, second, iterated };

std::string_view to_string(ProbeOperator op);
ProbeOperator parse_probe_operator(std::string_view text);

enum class NormTarget { strong, weak };

std::string_view to_string(NormTarget t);
NormTarget parse_norm_target(std::string_view text);

struct OpnormSpec {
  ProbeOperator op = ProbeOperator::first;
  double p1 = 4.0;
  double p2 = 4.0;
  double p = 2.0;
  NormTarget target = NormTarget::strong;
  std::size_t trials = 30;
  std::uint64_t seed = 1;

  // Power of w dividing the output: 0 for plain T, 1 for one commutator slot, 2 for iterated.
  int weight_power() const noexcept;
};

/// Deterministic probe pair number `index`: indicator pairs of cubes, Rademacher
/// sign patterns at one dyadic scale, and smooth bumps, all placed in relative
/// box coordinates.
std::pair<GridFunction, GridFunction> probe_pair(const Grid& grid, std::uint64_t seed,
                                                 std::size_t index);

struct OpnormResult {
  double bound = 0.0;
  std::vector<double> running;  // running maximum after each trial
  std::vector<double> ratios;   // per-trial ratio
  std::size_t best_trial = 0;
};

/// Running maximum over the probe family of
///   || out w^{-m} ||_{L^p(w)} / (||f1||_{L^{p1}(w)} ||f2||_{L^{p2}(w)}).
/// ConfigError unless 1/p = 1/p1 + 1/p2; b is required for the commutators.
OpnormResult opnorm_lower_bound(const BilinearOperator& op, const GridFunction* b, const Weight& w,
                                const OpnormSpec& spec);

}  // namespace bmolab
