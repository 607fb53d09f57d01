#include "bmolab/harness/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bmolab {

std::string_view to_string(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::steps: return "steps";
    case CorpusKind::spikes: return "spikes";
    case CorpusKind::log: return "log";
    case CorpusKind::mixed: return "mixed";
  }
  return "unknown";
}

CorpusKind parse_corpus_kind(std::string_view text) {
  if (text == "steps") return CorpusKind::steps;
  if (text == "spikes") return CorpusKind::spikes;
  if (text == "log") return CorpusKind::log;
  if (text == "mixed") return CorpusKind::mixed;
  throw ConfigError("unknown corpus kind '" + std::string(text) + "'");
}

std::string CorpusSpec::descriptor() const {
  std::ostringstream os;
  os << to_string(kind) << ":count=" << count << ",seed=" << seed;
  return os.str();
}

namespace {

Point relative(const Grid& grid, const Point& x) {
  return {(x[0] - grid.origin()[0]) / grid.side(), (x[1] - grid.origin()[1]) / grid.side()};
}

bool inside(const Shape::Box& b, const Point& p, int dim) {
  for (int a = 0; a < dim; ++a) {
    const auto k = static_cast<std::size_t>(a);
    if (p[k] < b.lo[k] || p[k] >= b.hi[k]) return false;
  }
  return true;
}

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Shape make_steps(std::mt19937_64& rng, int dim) {
  Shape s;
  s.kind = Shape::Kind::steps;
  s.name = "steps";
  if (dim == 1) {
    // Piecewise constant with 2..6 breakpoints; levels in [-1, 1].
    const int breaks = pick(rng, 2, 6);
    std::vector<double> cuts;
    for (int i = 0; i < breaks; ++i) cuts.push_back(uniform(rng, 0.05, 0.95));
    std::sort(cuts.begin(), cuts.end());
    cuts.insert(cuts.begin(), 0.0);
    cuts.push_back(1.0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      s.boxes.push_back({{cuts[i], 0.0}, {cuts[i + 1], 1.0}, uniform(rng, -1.0, 1.0)});
    }
    return s;
  }
  const int boxes = pick(rng, 2, 5);
  for (int i = 0; i < boxes; ++i) {
    const double x0 = uniform(rng, 0.0, 0.8), y0 = uniform(rng, 0.0, 0.8);
    const double w = uniform(rng, 0.1, 0.5), h = uniform(rng, 0.1, 0.5);
    s.boxes.push_back({{x0, y0}, {std::min(1.0, x0 + w), std::min(1.0, y0 + h)}, uniform(rng, -1.0, 1.0)});
  }
  return s;
}

Shape make_spikes(std::mt19937_64& rng, int dim) {
  Shape s;
  s.kind = Shape::Kind::spikes;
  s.name = "spikes";
  constexpr double width = 1.0 / 32.0;
  const int spikes = pick(rng, 1, 3);
  for (int i = 0; i < spikes; ++i) {
    const double x0 = uniform(rng, 0.0, 1.0 - width);
    const double y0 = dim == 1 ? 0.0 : uniform(rng, 0.0, 1.0 - width);
    const double sign = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    s.boxes.push_back({{x0, y0}, {x0 + width, dim == 1 ? 1.0 : y0 + width}, sign * uniform(rng, 1.0, 5.0)});
  }
  return s;
}

Shape make_log(std::mt19937_64& rng, int dim) {
  Shape s;
  s.kind = Shape::Kind::log;
  s.name = "log";
  s.center = {uniform(rng, 0.1, 0.9), dim == 1 ? 0.5 : uniform(rng, 0.1, 0.9)};
  return s;
}

}  // namespace

GridFunction Shape::sample(const Grid& grid) const {
  const int dim = grid.dim();
  if (kind == Kind::log) return log_exemplar(grid, center);
  return GridFunction::sample(grid, [&](const Point& x) {
    const Point p = relative(grid, x);
    double v = base;
    for (const Box& b : boxes) {
      if (inside(b, p, dim)) v += b.level;
    }
    return v;
  });
}

std::mt19937_64 member_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::vector<Shape> corpus_shapes(int dim, const CorpusSpec& spec) {
  if (spec.count == 0) throw ConfigError("corpus count must be positive");
  std::vector<Shape> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    auto rng = member_rng(spec.seed, i);
    CorpusKind kind = spec.kind;
    if (kind == CorpusKind::mixed) {
      kind = i % 3 == 0 ? CorpusKind::steps : i % 3 == 1 ? CorpusKind::spikes : CorpusKind::log;
    }
    Shape s;
    switch (kind) {
      case CorpusKind::steps: s = make_steps(rng, dim); break;
      case CorpusKind::spikes: s = make_spikes(rng, dim); break;
      default: s = make_log(rng, dim); break;
    }
    s.name += "#" + std::to_string(i);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<GridFunction> generate_corpus(const Grid& grid, const CorpusSpec& spec) {
  std::vector<GridFunction> out;
  for (const Shape& s : corpus_shapes(grid.dim(), spec)) out.push_back(s.sample(grid));
  return out;
}

GridFunction log_exemplar(const Grid& grid, const Point& relative_center) {
  const Point c{grid.origin()[0] + relative_center[0] * grid.side(),
                grid.origin()[1] + relative_center[1] * grid.side()};
  const double h = grid.spacing();
  const int dim = grid.dim();
  return GridFunction::sample(grid, [&](const Point& x) {
    const double d = dim == 1 ? std::abs(x[0] - c[0]) : std::hypot(x[0] - c[0], x[1] - c[1]);
    return std::log(std::max(d, h));
  });
}

GridFunction bump(const Grid& grid, const Point& relative_center, double relative_radius) {
  const int dim = grid.dim();
  return GridFunction::sample(grid, [&](const Point& x) {
    const Point p = relative(grid, x);
    const double dx = p[0] - relative_center[0];
    const double dy = dim == 1 ? 0.0 : p[1] - relative_center[1];
    const double q = (dx * dx + dy * dy) / (relative_radius * relative_radius);
    return q < 1.0 ? (1.0 - q) * (1.0 - q) : 0.0;
  });
}

}  // namespace bmolab
