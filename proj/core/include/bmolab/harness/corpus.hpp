#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bmolab/core.hpp"

namespace bmolab {

enum class CorpusKind { steps, spikes, log, mixed };

std::string_view to_string(CorpusKind kind);
CorpusKind parse_corpus_kind(std::string_view text);

struct CorpusSpec {
  CorpusKind kind = CorpusKind::mixed;
  std::size_t count = 100;
  std::uint64_t seed = 1;

  std::string descriptor() const;
};

/// A corpus member is a shape defined in relative box coordinates, so the same
/// member can be sampled at any resolution.
struct Shape {
  enum class Kind { steps, spikes, log } kind = Kind::steps;
  std::string name;
  // steps/spikes: boxes [lo, hi) in relative coordinates with a level each.
  struct Box {
    Point lo{0.0, 0.0};
    Point hi{1.0, 1.0};
    double level = 0.0;
  };
  std::vector<Box> boxes;
  double base = 0.0;
  // log: log(max(|x - center|, h)) with center in relative coordinates.
  Point center{0.5, 0.5};

  GridFunction sample(const Grid& grid) const;
};

// Engine for member `index` of a seeded collection; independent of the other members.
std::mt19937_64 member_rng(std::uint64_t seed, std::uint64_t index);

std::vector<Shape> corpus_shapes(int dim, const CorpusSpec& spec);
std::vector<GridFunction> generate_corpus(const Grid& grid, const CorpusSpec& spec);

/// log(max(|x - c|, h)) with c given in relative box coordinates.
GridFunction log_exemplar(const Grid& grid, const Point& relative_center);
/// Smooth bump (1 - |x - c|^2 / rho^2)^2 inside the ball, relative units.
GridFunction bump(const Grid& grid, const Point& relative_center, double relative_radius);

}  // namespace bmolab
