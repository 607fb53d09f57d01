#include "bmolab/czo.hpp"

#include <string>

namespace bmolab {

std::string_view to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "truncated";
}

std::string_view to_string(CommutatorSlot slot) {
  switch (slot) {
    case CommutatorSlot::first: return "first";
    case CommutatorSlot::second: return "second";
    case CommutatorSlot::iterated: return "iterated";
  }
  return "unknown";
}

CommutatorSlot parse_commutator_slot(std::string_view text) {
  if (text == "first") return CommutatorSlot::first;
  if (text == "second") return CommutatorSlot::second;
  if (text == "iterated") return CommutatorSlot::iterated;
  throw ConfigError("unknown commutator slot '" + std::string(text) + "'");
}

BilinearOperator::BilinearOperator(BilinearKernel kernel, const Grid& grid, Boundary boundary)
    : kernel_(std::move(kernel)), grid_(grid), boundary_(boundary) {
  if (kernel_.dim != grid_.dim()) {
    throw ConfigError("kernel " + kernel_.name + " has dimension " + std::to_string(kernel_.dim) +
                      " but the grid has dimension " + std::to_string(grid_.dim()));
  }
  if (!kernel_.evaluate) throw ConfigError("kernel " + kernel_.name + " has no evaluator");
  const auto n = static_cast<long>(grid_.cells_per_axis());
  if (boundary_ == Boundary::periodic) {
    span_ = n;
    shift_ = n / 2;
  } else {
    span_ = 2 * n - 1;
    shift_ = n - 1;
  }
  const auto s = static_cast<std::size_t>(span_);
  const std::size_t entries = grid_.dim() == 1 ? s * s : s * s * s * s;
  if (entries > kTableBudget) return;
  table_.assign(entries, 0.0);
  if (grid_.dim() == 1) {
    for (long a = 0; a < span_; ++a) {
      for (long b = 0; b < span_; ++b) {
        const long d1 = a - shift_;
        const long d2 = b - shift_;
        if (d1 == 0 && d2 == 0) continue;
        table_[static_cast<std::size_t>(a * span_ + b)] = direct(d1, 0, d2, 0);
      }
    }
    return;
  }
  for (long a = 0; a < span_; ++a) {
    for (long b = 0; b < span_; ++b) {
      for (long c = 0; c < span_; ++c) {
        for (long d = 0; d < span_; ++d) {
          const long d1x = a - shift_, d1y = b - shift_, d2x = c - shift_, d2y = d - shift_;
          if (d1x == 0 && d1y == 0 && d2x == 0 && d2y == 0) continue;
          table_[static_cast<std::size_t>(((a * span_ + b) * span_ + c) * span_ + d)] =
              direct(d1x, d1y, d2x, d2y);
        }
      }
    }
  }
}

double BilinearOperator::direct(long d1x, long d1y, long d2x, long d2y) const {
  const double h = grid_.spacing();
  return kernel_.evaluate({static_cast<double>(d1x) * h, static_cast<double>(d1y) * h},
                          {static_cast<double>(d2x) * h, static_cast<double>(d2y) * h});
}

std::vector<std::size_t> support(const GridFunction& f) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] != 0.0) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> all_cells(const Grid& grid) {
  std::vector<std::size_t> out(grid.cell_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

namespace {

void check_inputs(const BilinearOperator& op, const GridFunction& f1, const GridFunction& f2) {
  require_same_grid(op.grid(), f1.grid(), "bilinear operator");
  require_same_grid(op.grid(), f2.grid(), "bilinear operator");
}

// Gathers the nonzero values of f on its support.
std::vector<double> gather(const GridFunction& f, const std::vector<std::size_t>& cells) {
  std::vector<double> out(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) out[i] = f[cells[i]];
  return out;
}

}  // namespace

GridFunction eval_bilinear(const BilinearOperator& op, const GridFunction& f1, const GridFunction& f2) {
  check_inputs(op, f1, f2);
  const auto s1 = support(f1);
  const auto s2 = support(f2);
  const auto v1 = gather(f1, s1);
  const auto v2 = gather(f2, s2);
  const auto out_cells = all_cells(op.grid());
  auto out = op.apply<double>(
      out_cells, s1, [&](std::size_t, std::size_t i) { return v1[i]; }, s2,
      [&](std::size_t, std::size_t j) { return v2[j]; });
  return GridFunction(op.grid(), std::move(out));
}

GridFunction eval_bilinear(const BilinearKernel& k, const GridFunction& f1, const GridFunction& f2,
                           Boundary boundary) {
  return eval_bilinear(BilinearOperator(k, f1.grid(), boundary), f1, f2);
}

GridFunction commutator(CommutatorSlot slot, const GridFunction& b, const BilinearOperator& op,
                        const GridFunction& f1, const GridFunction& f2, CommutatorForm form) {
  check_inputs(op, f1, f2);
  require_same_grid(op.grid(), b.grid(), "commutator symbol");
  if (form == CommutatorForm::expanded) {
    switch (slot) {
      case CommutatorSlot::first:
        return b * eval_bilinear(op, f1, f2) - eval_bilinear(op, b * f1, f2);
      case CommutatorSlot::second:
        return b * eval_bilinear(op, f1, f2) - eval_bilinear(op, f1, b * f2);
      case CommutatorSlot::iterated: {
        const GridFunction bf1 = b * f1;
        const GridFunction bf2 = b * f2;
        return (b * b) * eval_bilinear(op, f1, f2) - b * eval_bilinear(op, bf1, f2) -
               b * eval_bilinear(op, f1, bf2) + eval_bilinear(op, bf1, bf2);
      }
    }
  }
  const auto s1 = support(f1);
  const auto s2 = support(f2);
  const auto v1 = gather(f1, s1);
  const auto v2 = gather(f2, s2);
  const bool left = slot != CommutatorSlot::second;
  const bool right = slot != CommutatorSlot::first;
  auto out = op.apply<double>(
      all_cells(op.grid()), s1,
      [&](std::size_t x, std::size_t i) { return left ? (b[x] - b[s1[i]]) * v1[i] : v1[i]; }, s2,
      [&](std::size_t x, std::size_t j) { return right ? (b[x] - b[s2[j]]) * v2[j] : v2[j]; });
  return GridFunction(op.grid(), std::move(out));
}

std::vector<std::complex<double>> commutator_on(
    CommutatorSlot slot, const GridFunction& b, const BilinearOperator& op,
    std::span<const std::size_t> s1, std::span<const std::complex<double>> f1,
    std::span<const std::size_t> s2, std::span<const std::complex<double>> f2,
    std::span<const std::size_t> out_cells) {
  require_same_grid(op.grid(), b.grid(), "commutator symbol");
  if (s1.size() != f1.size() || s2.size() != f2.size()) {
    throw ConfigError("support and value lists differ in length");
  }
  const bool left = slot != CommutatorSlot::second;
  const bool right = slot != CommutatorSlot::first;
  using C = std::complex<double>;
  return op.apply<C>(
      out_cells, s1,
      [&](std::size_t x, std::size_t i) { return left ? (b[x] - b[s1[i]]) * f1[i] : f1[i]; }, s2,
      [&](std::size_t x, std::size_t j) { return right ? (b[x] - b[s2[j]]) * f2[j] : f2[j]; });
}

}  // namespace bmolab
