#include "bmolab/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "bmolab/czo.hpp"
#include "bmolab/harness/corpus.hpp"
#include "bmolab/harness/cz.hpp"
#include "bmolab/harness/equivalence.hpp"
#include "bmolab/harness/fourier.hpp"
#include "bmolab/harness/inequalities.hpp"
#include "bmolab/harness/john_nirenberg.hpp"
#include "bmolab/harness/opnorm.hpp"
#include "bmolab/maximal.hpp"
#include "bmolab/norms.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

using nlohmann::json;

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void Table::write_csv(std::ostream& os) const {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

GridFunction symbol_from_preset(const Grid& grid, std::string_view preset, std::uint64_t seed) {
  if (preset == "log") return log_exemplar(grid, {0.5, 0.5});
  if (preset == "linear") return GridFunction::sample(grid, [](const Point& x) { return x[0]; });
  if (preset == "steps") return corpus_shapes(grid.dim(), {CorpusKind::steps, 1, seed})[0].sample(grid);
  throw ConfigError("unknown symbol preset '" + std::string(preset) + "'");
}

namespace {

struct Setup {
  Grid grid;
  Weight weight;
  CubeFamily family;

  explicit Setup(const ExperimentConfig& c, std::size_t refine = 1)
      : grid(c.grid.dim, c.grid.side, c.grid.cells * refine),
        weight(weight_from_preset(grid, c.weight)),
        family(enumerate_cubes(grid, FamilySpec::parse(c.family))) {}
};

Boundary boundary_of(const ExperimentConfig& c) {
  return c.boundary == "periodic" ? Boundary::periodic : Boundary::truncated;
}

std::vector<GridFunction> functions_for(const ExperimentConfig& c, const Grid& grid,
                                        const GridFunction* input) {
  if (input != nullptr) {
    require_same_grid(grid, input->grid(), "input function");
    return {*input};
  }
  return generate_corpus(grid, c.corpus);
}

json cube_json(const Cube& q, int dim) {
  json anchor = json::array();
  for (int a = 0; a < dim; ++a) anchor.push_back(q.anchor[static_cast<std::size_t>(a)]);
  return {{"anchor", anchor}, {"side", q.side}};
}

double worst_drift(double a, double b) {
  if (a == 0.0 && b == 0.0) return 1.0;
  if (a == 0.0 || b == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(a / b, b / a);
}

double relative_change(double a, double b) {
  if (a > 0.0) return std::abs(b / a - 1.0);
  return b > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

MaximalPath path_of(std::string_view text) {
  if (text == "naive") return MaximalPath::naive;
  if (text == "scatter") return MaximalPath::scatter;
  if (text == "dyadic_tree") return MaximalPath::dyadic_tree;
  return MaximalPath::automatic;
}

}  // namespace

RunOutput run_norm(const ExperimentConfig& c, const GridFunction* input) {
  const Setup s(c);
  const auto fs = functions_for(c, s.grid, input);
  std::vector<BmoVariant> variants;
  for (const auto& n : c.norms) variants.push_back(BmoVariant::parse(n));

  RunOutput out;
  out.table.header = {"member"};
  for (const auto& v : variants) out.table.header.push_back(v.descriptor());
  json members = json::array();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    json entry = json::array();
    for (const auto& v : variants) {
      const NormReport r = bmo_norm(fs[i], s.weight, v, s.family);
      row.push_back(format_number(r.value));
      const json w = cube_json(r.witness, s.grid.dim());
      entry.push_back({{"variant", v.name()}, {"parameter", v.parameter}, {"value", r.value},
                       {"witness_anchor", w["anchor"]}, {"witness_side", w["side"]},
                       {"family_kind", to_string(s.family.kind())}});
    }
    out.table.add(std::move(row));
    members.push_back(std::move(entry));
  }
  out.result = {{"weight", s.weight.descriptor()}, {"family", s.family.descriptor()}, {"members", members}};
  return out;
}

RunOutput run_weight_check(const ExperimentConfig& c) {
  const Setup s(c);
  RunOutput out;
  const double a1 = a1_constant(s.weight, s.family);
  const auto [lo, hi] = std::minmax_element(s.weight.values().begin(), s.weight.values().end());
  json ap = json::object();
  out.table.header = {"p", "ap_constant"};
  out.table.add({"1", format_number(a1)});
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const double v = ap_constant(s.weight, p, s.family);
    ap[format_number(p)] = v;
    out.table.add({format_number(p), format_number(v)});
  }
  out.passed = std::isfinite(a1);
  out.result = {{"weight", s.weight.descriptor()},
                {"family", s.family.descriptor()},
                {"min", *lo},
                {"max", *hi},
                {"measure", weighted_measure(s.weight, whole_grid(s.grid))},
                {"a1", a1},
                {"ap", ap}};
  return out;
}

RunOutput run_maximal(const ExperimentConfig& c, const GridFunction* input) {
  const Setup s(c);
  const GridFunction f = input != nullptr ? functions_for(c, s.grid, input)[0]
                                          : generate_corpus(s.grid, c.corpus)[0];
  const MaximalPath path = path_of(c.maximal.path);
  RunOutput out;
  out.table.header = {"cell", "x", "f"};
  std::vector<GridFunction> values;
  json kinds = json::array();
  for (const auto& k : c.maximal.kinds) {
    const MaximalSpec spec = MaximalSpec::parse(k);
    values.push_back(maximal(f, spec, spec.needs_weight() ? &s.weight : nullptr, s.family, path));
    out.table.header.push_back(spec.descriptor());
    kinds.push_back({{"kind", spec.descriptor()},
                     {"max", values.back().max_abs()},
                     {"lp2", lp_norm(values.back(), s.weight, 2.0)}});
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = s.grid.midpoint(i);
    std::vector<std::string> row{std::to_string(i), format_number(x[0]), format_number(f[i])};
    for (const auto& v : values) row.push_back(format_number(v[i]));
    out.table.add(std::move(row));
  }

  // Fefferman-Stein ratio over the corpus at N and 2N.
  json fs_json = json::array();
  for (double p : c.fefferman_stein.exponents) {
    double worst[2] = {0.0, 0.0};
    std::size_t undefined = 0;
    for (std::size_t refine : {1u, 2u}) {
      const Setup t(c, refine);
      for (const auto& g : generate_corpus(t.grid, c.corpus)) {
        try {
          worst[refine - 1] = std::max(worst[refine - 1],
                                       fefferman_stein_ratio(g, t.weight, p, c.fefferman_stein.delta, t.family));
        } catch (const UndefinedRatioError&) {
          ++undefined;
        }
      }
    }
    const double drift = worst_drift(worst[0], worst[1]);
    const bool ok = worst[0] <= c.caps.fefferman_stein && drift <= c.caps.fs_stability;
    out.passed = out.passed && ok;
    fs_json.push_back({{"p", p}, {"max_ratio", worst[0]}, {"max_ratio_refined", worst[1]},
                       {"drift", drift}, {"undefined", undefined}, {"passed", ok}});
  }
  out.result = {{"weight", s.weight.descriptor()}, {"family", s.family.descriptor()},
                {"kinds", kinds}, {"fefferman_stein", fs_json}};
  return out;
}

RunOutput run_cz_decompose(const ExperimentConfig& c, const GridFunction* input) {
  const Setup s(c);
  const auto fs = functions_for(c, s.grid, input);
  const Cube base = whole_grid(s.grid);
  RunOutput out;
  out.table.header = {"member", "s", "r", "selected", "worst_upper", "passed"};
  std::size_t failures = 0, skipped = 0;
  double worst_upper = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].is_constant()) {
      ++skipped;
      continue;
    }
    for (double r : c.cz.exponents) {
      const GridFunction f = normalize_bmo_r(fs[i], s.weight, r, s.family);
      for (double th : c.cz.thresholds) {
        const CZDecomposition cz = cz_decompose(f, s.weight, base, th, r);
        const CZCheck check = validate_cz(f, s.weight, cz);
        worst_upper = std::max(worst_upper, check.worst_upper);
        if (!check.passes()) ++failures;
        out.table.add({std::to_string(i), format_number(th), format_number(r), std::to_string(cz.selected.size()),
                       format_number(check.worst_upper), check.passes() ? "1" : "0"});
      }
    }
  }
  out.passed = failures == 0;
  out.result = {{"instances", out.table.rows.size()}, {"failures", failures}, {"skipped_constant", skipped},
                {"worst_upper", worst_upper}};
  return out;
}

RunOutput run_jn_decay(const ExperimentConfig& c, const GridFunction* input) {
  const Setup s(c);
  const GridFunction f = input != nullptr ? functions_for(c, s.grid, input)[0]
                                          : log_exemplar(s.grid, {c.jn.center, c.jn.center});
  RunOutput out;
  out.table.header = {"t", "fraction", "model"};
  try {
    const JNCheck check = john_nirenberg_check(f, s.weight, whole_grid(s.grid), c.jn.r);
    json points = json::array();
    for (const auto& p : check.fit.points) {
      const double model = check.fit.c1 * std::exp(-check.fit.c2 * p.t);
      points.push_back({{"t", p.t}, {"fraction", p.fraction}, {"model", model}});
      out.table.add({format_number(p.t), format_number(p.fraction), format_number(model)});
    }
    out.passed = check.passes;
    out.result = {{"weight", s.weight.descriptor()}, {"center", check.center}, {"c1", check.fit.c1},
                  {"c2", check.fit.c2}, {"residual", check.fit.residual},
                  {"worst_excess", check.worst_excess}, {"points", points}};
  } catch (const InsufficientDataError& e) {
    out.passed = false;
    out.result = {{"weight", s.weight.descriptor()}, {"error", e.what()}};
  }
  return out;
}

RunOutput run_lemma1(const ExperimentConfig& c) {
  const Setup s(c);
  const auto fs = generate_corpus(s.grid, c.corpus);
  RunOutput out;
  out.table.header = {"member", "q1", "q2", "lhs", "rhs", "passed"};
  std::size_t failures = 0;
  double worst = 0.0;
  for (const auto& [q1, q2] : c.lemma1.pairs) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const Lemma1Report r = check_lemma1(fs[i], s.weight, q1, q2, s.family);
      if (!r.passes) ++failures;
      if (r.rhs > 0.0) worst = std::max(worst, r.lhs / r.rhs);
      out.table.add({std::to_string(i), format_number(q1), format_number(q2), format_number(r.lhs),
                     format_number(r.rhs), r.passes ? "1" : "0"});
    }
  }
  out.passed = failures == 0;
  out.result = {{"weight", s.weight.descriptor()}, {"checks", out.table.rows.size()},
                {"failures", failures}, {"worst_lhs_over_rhs", worst}};
  return out;
}

RunOutput run_equivalence(const ExperimentConfig& c) {
  RunOutput out;
  out.table.header = {"pairing", "member", "ratio"};
  json reports = json::array();
  for (const auto& text : c.equivalence.pairings) {
    const EquivalenceSpec spec = EquivalenceSpec::parse(text);
    double band[2] = {0.0, 0.0};
    json detail;
    for (std::size_t refine : {1u, 2u}) {
      const Setup s(c, refine);
      const auto fs = generate_corpus(s.grid, c.corpus);
      const EquivalenceReport r = equivalence_experiment(spec, s.weight, fs, c.corpus.descriptor(), s.family);
      band[refine - 1] = r.band();
      if (refine == 1) {
        for (std::size_t k = 0; k < r.members.size(); ++k) {
          out.table.add({spec.descriptor(), std::to_string(r.members[k]), format_number(r.ratios[k])});
        }
        detail = {{"pairing", spec.descriptor()}, {"norm_a", r.norm_a.descriptor()},
                  {"norm_b", r.norm_b.descriptor()}, {"min_ratio", r.min_ratio},
                  {"max_ratio", r.max_ratio}, {"corpus", r.corpus}, {"weight", r.weight},
                  {"family", r.family}, {"a1", r.a1}};
      }
    }
    const double drift = worst_drift(band[0], band[1]);
    const bool ok = band[0] <= c.caps.ratio_band && drift <= c.caps.band_stability;
    out.passed = out.passed && ok;
    detail["band"] = band[0];
    detail["band_refined"] = band[1];
    detail["drift"] = drift;
    detail["passed"] = ok;
    reports.push_back(std::move(detail));
  }
  out.result = {{"reports", reports}};
  return out;
}

RunOutput run_sharp_bound(const ExperimentConfig& c) {
  const auto shapes = corpus_shapes(c.grid.dim, {CorpusKind::mixed, c.sharp_bound.triples, c.corpus.seed});
  const BilinearKernel kernel = kernel_from_preset(c.kernel, c.grid.dim);
  RunOutput out;
  out.table.header = {"slot", "triple", "constant", "constant_refined", "hard_failures"};
  json slots = json::array();
  for (const auto& slot_text : c.sharp_bound.slots) {
    const CommutatorSlot slot = parse_commutator_slot(slot_text);
    // The inequality constant is the sup over triples and cells, taken per resolution.
    double worst[2] = {0.0, 0.0};
    double triple_dev = 0.0;
    std::size_t hard = 0, degenerate = 0;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      double constant[2] = {0.0, 0.0};
      bool skipped = false;
      std::size_t hard_here = 0;
      for (std::size_t refine : {1u, 2u}) {
        const Setup s(c, refine);
        const BilinearOperator op(kernel, s.grid, boundary_of(c));
        auto rng = member_rng(c.corpus.seed ^ 0x5a5a5a5aULL, i);
        std::uniform_real_distribution<double> pos(0.2, 0.8), rad(0.1, 0.3);
        const double c1 = pos(rng), c2 = pos(rng), r1 = rad(rng), r2 = rad(rng);
        const GridFunction f1 = bump(s.grid, {c1, c1}, r1);
        const GridFunction f2 = bump(s.grid, {c2, c2}, r2);
        try {
          const auto r = check_pointwise_sharp_bound(shapes[i].sample(s.grid), s.weight, op, f1, f2,
                                                     c.sharp_bound.s, slot, s.family);
          constant[refine - 1] = r.constant;
          hard_here += r.hard_failures;
        } catch (const DegenerateError&) {
          skipped = true;
        }
      }
      if (skipped) {
        ++degenerate;
        continue;
      }
      hard += hard_here;
      worst[0] = std::max(worst[0], constant[0]);
      worst[1] = std::max(worst[1], constant[1]);
      triple_dev = std::max(triple_dev, relative_change(constant[0], constant[1]));
      out.table.add({std::string(to_string(slot)), std::to_string(i), format_number(constant[0]),
                     format_number(constant[1]), std::to_string(hard_here)});
    }
    const double dev = relative_change(worst[0], worst[1]);
    const bool ok = hard == 0 && std::isfinite(worst[0]) && std::isfinite(worst[1]) &&
                    dev <= c.caps.sharp_stability;
    out.passed = out.passed && ok;
    slots.push_back({{"slot", to_string(slot)}, {"constant", worst[0]}, {"constant_refined", worst[1]},
                     {"deviation", dev}, {"worst_triple_deviation", triple_dev},
                     {"hard_failures", hard}, {"degenerate", degenerate}, {"passed", ok}});
  }
  out.result = {{"kernel", kernel.name}, {"s", c.sharp_bound.s}, {"slots", slots}};
  return out;
}

RunOutput run_opnorm(const ExperimentConfig& c) {
  const BilinearKernel kernel = kernel_from_preset(c.kernel, c.grid.dim);
  OpnormSpec spec;
  spec.op = parse_probe_operator(c.opnorm.op);
  spec.p1 = c.opnorm.p1;
  spec.p2 = c.opnorm.p2;
  spec.p = c.opnorm.p;
  spec.target = parse_norm_target(c.opnorm.target);
  spec.trials = c.opnorm.trials;
  spec.seed = c.opnorm.seed;

  RunOutput out;
  out.table.header = {"trial", "ratio", "running", "ratio_doubled", "running_doubled"};
  OpnormResult res[2];
  for (std::size_t k = 0; k < 2; ++k) {
    // Doubling the box side at fixed resolution density.
    const double factor = k == 0 ? 1.0 : 2.0;
    const Grid grid(c.grid.dim, c.grid.side * factor, c.grid.cells * (k + 1));
    const Weight w = weight_from_preset(grid, c.weight);
    const BilinearOperator op(kernel, grid, boundary_of(c));
    const GridFunction b = symbol_from_preset(grid, c.opnorm.symbol, c.corpus.seed);
    res[k] = opnorm_lower_bound(op, &b, w, spec);
  }
  for (std::size_t t = 0; t < spec.trials; ++t) {
    out.table.add({std::to_string(t), format_number(res[0].ratios[t]), format_number(res[0].running[t]),
                   format_number(res[1].ratios[t]), format_number(res[1].running[t])});
  }
  const double growth = res[0].bound > 0.0 ? res[1].bound / res[0].bound : 1.0;
  const bool expect_growth = c.opnorm.symbol == "linear" && spec.op != ProbeOperator::plain;
  out.passed = expect_growth ? growth >= c.caps.opnorm_growth
                             : std::abs(growth - 1.0) <= c.caps.opnorm_tolerance;
  out.result = {{"operator", to_string(spec.op)}, {"symbol", c.opnorm.symbol}, {"bound", res[0].bound},
                {"bound_doubled", res[1].bound}, {"growth", growth}, {"best_trial", res[0].best_trial},
                {"expectation", expect_growth ? "growth" : "stable"}};
  return out;
}

RunOutput run_reconstruct(const ExperimentConfig& c, const GridFunction* input) {
  const Setup s(c);
  const GridFunction b = input != nullptr ? functions_for(c, s.grid, input)[0]
                                          : symbol_from_preset(s.grid, "steps", c.corpus.seed);
  const BilinearKernel kernel = kernel_from_preset(c.kernel, c.grid.dim);
  const BilinearOperator op(kernel, s.grid, boundary_of(c));
  const Cube q{{c.reconstruct.anchor, s.grid.dim() == 1 ? 0 : c.reconstruct.anchor}, c.reconstruct.side};
  const FourierExpansion full = find_admissible_expansion(kernel, c.reconstruct.truncations.front());

  RunOutput out;
  out.table.header = {"J", "tail_bound", "max_error", "relative_error", "max_bound"};
  auto record = [&](std::size_t J) {
    const FourierExpansion e = full.truncated(J);
    const Reconstruction r = reconstruct_oscillation(b, op, q, e, c.reconstruct.iterated);
    out.table.add({std::to_string(J), format_number(e.tail_bound), format_number(r.max_error),
                   format_number(r.relative_error()), format_number(r.max_bound)});
    return std::pair{e, r};
  };
  json sweep = json::array();
  std::vector<double> errors;
  double max_target = 0.0;
  for (std::size_t J : c.reconstruct.truncations) {
    const auto [e, r] = record(J);
    max_target = r.max_target;
    errors.push_back(r.relative_error());
    sweep.push_back({{"J", J}, {"tail_bound", e.tail_bound}, {"relative_error", r.relative_error()},
                     {"max_bound", r.max_bound}, {"within_bound", r.max_error <= r.max_bound}});
  }
  // Smallest power of two whose tail bound is under 5% of the largest oscillation.
  std::size_t chosen = 1;
  while (chosen < full.spectrum.size() && !(full.truncated(chosen).tail_bound < 0.05 * max_target)) chosen *= 2;
  chosen = std::min(chosen, full.spectrum.size());
  const auto [ce, cr] = record(chosen);
  const OscillationEstimate est = estimate_oscillation(cr, s.weight, c.reconstruct.p, c.reconstruct.q);

  bool monotone = true;
  for (std::size_t k = 1; k < errors.size(); ++k) monotone = monotone && errors[k] <= errors[k - 1] + 1e-3;
  const bool tail_ok = ce.tail_bound < 0.05 * max_target;
  out.passed = monotone && tail_ok && cr.relative_error() <= c.caps.reconstruction_error;
  out.result = {{"kernel", kernel.name},
                {"expansion", {{"center", full.center}, {"delta", full.delta}, {"radius", full.radius},
                               {"terms", full.spectrum.size()}, {"alias_bound", full.alias_bound}}},
                {"q", cube_json(q, s.grid.dim())},
                {"q1", cube_json(cr.q1, s.grid.dim())},
                {"q2", cube_json(cr.q2, s.grid.dim())},
                {"iterated", c.reconstruct.iterated},
                {"max_target", max_target},
                {"sweep", sweep},
                {"monotone", monotone},
                {"chosen_J", chosen},
                {"chosen_tail_bound", ce.tail_bound},
                {"chosen_relative_error", cr.relative_error()},
                {"estimates", {{"weak_series", est.weak_series}, {"weak_target", est.weak_target},
                               {"morrey_series", est.morrey_series}, {"morrey_target", est.morrey_target}}}};
  return out;
}

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names{
      "norm", "weight-check", "maximal", "cz-decompose", "jn-decay", "lemma1",
      "equivalence", "sharp-bound", "opnorm", "reconstruct", "report"};
  return names;
}

RunOutput run_command(std::string_view command, const ExperimentConfig& c, const GridFunction* input) {
  if (command == "norm") return run_norm(c, input);
  if (command == "weight-check") return run_weight_check(c);
  if (command == "maximal") return run_maximal(c, input);
  if (command == "cz-decompose") return run_cz_decompose(c, input);
  if (command == "jn-decay") return run_jn_decay(c, input);
  if (command == "lemma1") return run_lemma1(c);
  if (command == "equivalence") return run_equivalence(c);
  if (command == "sharp-bound") return run_sharp_bound(c);
  if (command == "opnorm") return run_opnorm(c);
  if (command == "reconstruct") return run_reconstruct(c, input);
  if (command == "report") return run_report(c);
  throw ConfigError("unknown command '" + std::string(command) + "'");
}

RunOutput run_report(const ExperimentConfig& c) {
  RunOutput out;
  out.table.header = {"experiment", "passed"};
  json parts = json::object();
  for (auto name : command_names()) {
    if (name == "report") continue;
    const RunOutput r = run_command(name, c);
    out.passed = out.passed && r.passed;
    out.table.add({std::string(name), r.passed ? "1" : "0"});
    parts[std::string(name)] = {{"passed", r.passed}, {"result", r.result}};
  }
  out.result = std::move(parts);
  return out;
}

json make_report(std::string_view command, const ExperimentConfig& c, const RunOutput& out) {
  const json config = to_json(c);
  return {{"command", command},
          {"config", config},
          {"config_digest", json_digest(config)},
          {"passed", out.passed},
          {"result", out.result},
          {"result_digest", json_digest(out.result)}};
}

}  // namespace bmolab
