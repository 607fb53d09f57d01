#include "bmolab/harness/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string_view>

#include "bmolab/czo.hpp"
#include "bmolab/digest.hpp"
#include "bmolab/harness/equivalence.hpp"
#include "bmolab/harness/opnorm.hpp"
#include "bmolab/maximal.hpp"
#include "bmolab/norms.hpp"
#include "bmolab/weights.hpp"

namespace bmolab {

using nlohmann::json;

namespace {

void require_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> known) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

MaximalPath parse_path(std::string_view text) {
  if (text == "automatic") return MaximalPath::automatic;
  if (text == "naive") return MaximalPath::naive;
  if (text == "scatter") return MaximalPath::scatter;
  if (text == "dyadic_tree") return MaximalPath::dyadic_tree;
  throw ConfigError("unknown maximal path '" + std::string(text) + "'");
}

}  // namespace

Grid ExperimentConfig::make_grid() const {
  if (grid.dim != 1 && grid.dim != 2) throw ConfigError("grid.dim must be 1 or 2");
  if (!(grid.side > 0.0)) throw ConfigError("grid.side must be positive");
  if (grid.cells == 0) throw ConfigError("grid.cells must be positive");
  return Grid(grid.dim, grid.side, grid.cells);
}

void ExperimentConfig::validate() const {
  const Grid g = make_grid();
  (void)weight_from_preset(g, weight);
  (void)kernel_from_preset(kernel, grid.dim);
  if (boundary != "truncated" && boundary != "periodic") throw ConfigError("unknown boundary '" + boundary + "'");
  if (corpus.count == 0) throw ConfigError("corpus.count must be positive");
  for (const auto& n : norms) BmoVariant::parse(n).validate();
  (void)FamilySpec::parse(family);
  for (const auto& [q1, q2] : lemma1.pairs) {
    if (!(q1 > 1.0 && q2 > q1)) throw ConfigError("lemma1 pairs need 1 < q1 < q2");
  }
  for (const auto& p : equivalence.pairings) (void)EquivalenceSpec::parse(p);
  for (const auto& m : maximal.kinds) MaximalSpec::parse(m).validate();
  (void)parse_path(maximal.path);
  for (double s : cz.thresholds) {
    if (!(s > 1.0)) throw ConfigError("cz thresholds must exceed 1");
  }
  for (double r : cz.exponents) {
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("cz exponents must lie in (0,1)");
  }
  if (!(jn.r > 0.0 && jn.r < 1.0)) throw ConfigError("jn.r must lie in (0,1)");
  if (!(fefferman_stein.delta > 0.0)) throw ConfigError("fefferman_stein.delta must be positive");
  if (!(sharp_bound.s > 1.0)) throw ConfigError("sharp_bound.s must exceed 1");
  for (const auto& s : sharp_bound.slots) (void)parse_commutator_slot(s);
  (void)parse_probe_operator(opnorm.op);
  (void)parse_norm_target(opnorm.target);
  if (opnorm.symbol != "log" && opnorm.symbol != "linear" && opnorm.symbol != "steps") {
    throw ConfigError("unknown opnorm symbol '" + opnorm.symbol + "'");
  }
  if (reconstruct.truncations.empty()) throw ConfigError("reconstruct.truncations is empty");
}

json to_json(const ExperimentConfig& c) {
  json pairs = json::array();
  for (const auto& [q1, q2] : c.lemma1.pairs) pairs.push_back({q1, q2});
  return json{
      {"grid", {{"dim", c.grid.dim}, {"side", c.grid.side}, {"cells", c.grid.cells}}},
      {"weight", c.weight},
      {"kernel", c.kernel},
      {"boundary", c.boundary},
      {"corpus", {{"kind", to_string(c.corpus.kind)}, {"count", c.corpus.count}, {"seed", c.corpus.seed}}},
      {"norms", c.norms},
      {"family", c.family},
      {"caps",
       {{"ratio_band", c.caps.ratio_band},
        {"band_stability", c.caps.band_stability},
        {"fefferman_stein", c.caps.fefferman_stein},
        {"fs_stability", c.caps.fs_stability},
        {"sharp_stability", c.caps.sharp_stability},
        {"opnorm_growth", c.caps.opnorm_growth},
        {"opnorm_tolerance", c.caps.opnorm_tolerance},
        {"reconstruction_error", c.caps.reconstruction_error}}},
      {"lemma1", {{"pairs", pairs}}},
      {"equivalence", {{"pairings", c.equivalence.pairings}}},
      {"maximal", {{"kinds", c.maximal.kinds}, {"path", c.maximal.path}}},
      {"cz", {{"thresholds", c.cz.thresholds}, {"exponents", c.cz.exponents}}},
      {"jn", {{"center", c.jn.center}, {"r", c.jn.r}}},
      {"fefferman_stein", {{"exponents", c.fefferman_stein.exponents}, {"delta", c.fefferman_stein.delta}}},
      {"sharp_bound", {{"s", c.sharp_bound.s}, {"slots", c.sharp_bound.slots}, {"triples", c.sharp_bound.triples}}},
      {"opnorm",
       {{"op", c.opnorm.op},
        {"symbol", c.opnorm.symbol},
        {"p1", c.opnorm.p1},
        {"p2", c.opnorm.p2},
        {"p", c.opnorm.p},
        {"target", c.opnorm.target},
        {"trials", c.opnorm.trials},
        {"seed", c.opnorm.seed}}},
      {"reconstruct",
       {{"anchor", c.reconstruct.anchor},
        {"side", c.reconstruct.side},
        {"truncations", c.reconstruct.truncations},
        {"iterated", c.reconstruct.iterated},
        {"p", c.reconstruct.p},
        {"q", c.reconstruct.q}}},
  };
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  require_keys(j, "config",
               {"grid", "weight", "kernel", "boundary", "corpus", "norms", "family", "caps", "lemma1",
                "equivalence", "maximal", "cz", "jn", "fefferman_stein", "sharp_bound", "opnorm",
                "reconstruct"});
  if (j.contains("grid")) {
    const json& g = j["grid"];
    require_keys(g, "grid", {"dim", "side", "cells"});
    read(g, "dim", c.grid.dim);
    read(g, "side", c.grid.side);
    read(g, "cells", c.grid.cells);
  }
  read(j, "weight", c.weight);
  read(j, "kernel", c.kernel);
  read(j, "boundary", c.boundary);
  if (j.contains("corpus")) {
    const json& k = j["corpus"];
    require_keys(k, "corpus", {"kind", "count", "seed"});
    std::string kind(to_string(c.corpus.kind));
    read(k, "kind", kind);
    c.corpus.kind = parse_corpus_kind(kind);
    read(k, "count", c.corpus.count);
    read(k, "seed", c.corpus.seed);
  }
  read(j, "norms", c.norms);
  read(j, "family", c.family);
  if (j.contains("caps")) {
    const json& k = j["caps"];
    require_keys(k, "caps",
                 {"ratio_band", "band_stability", "fefferman_stein", "fs_stability", "sharp_stability",
                  "opnorm_growth", "opnorm_tolerance", "reconstruction_error"});
    read(k, "ratio_band", c.caps.ratio_band);
    read(k, "band_stability", c.caps.band_stability);
    read(k, "fefferman_stein", c.caps.fefferman_stein);
    read(k, "fs_stability", c.caps.fs_stability);
    read(k, "sharp_stability", c.caps.sharp_stability);
    read(k, "opnorm_growth", c.caps.opnorm_growth);
    read(k, "opnorm_tolerance", c.caps.opnorm_tolerance);
    read(k, "reconstruction_error", c.caps.reconstruction_error);
  }
  if (j.contains("lemma1")) {
    const json& k = j["lemma1"];
    require_keys(k, "lemma1", {"pairs"});
    if (k.contains("pairs")) {
      c.lemma1.pairs.clear();
      for (const auto& p : k["pairs"]) {
        if (!p.is_array() || p.size() != 2) throw ConfigError("lemma1 pairs are [q1, q2] arrays");
        c.lemma1.pairs.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
    }
  }
  if (j.contains("equivalence")) {
    const json& k = j["equivalence"];
    require_keys(k, "equivalence", {"pairings"});
    read(k, "pairings", c.equivalence.pairings);
  }
  if (j.contains("maximal")) {
    const json& k = j["maximal"];
    require_keys(k, "maximal", {"kinds", "path"});
    read(k, "kinds", c.maximal.kinds);
    read(k, "path", c.maximal.path);
  }
  if (j.contains("cz")) {
    const json& k = j["cz"];
    require_keys(k, "cz", {"thresholds", "exponents"});
    read(k, "thresholds", c.cz.thresholds);
    read(k, "exponents", c.cz.exponents);
  }
  if (j.contains("jn")) {
    const json& k = j["jn"];
    require_keys(k, "jn", {"center", "r"});
    read(k, "center", c.jn.center);
    read(k, "r", c.jn.r);
  }
  if (j.contains("fefferman_stein")) {
    const json& k = j["fefferman_stein"];
    require_keys(k, "fefferman_stein", {"exponents", "delta"});
    read(k, "exponents", c.fefferman_stein.exponents);
    read(k, "delta", c.fefferman_stein.delta);
  }
  if (j.contains("sharp_bound")) {
    const json& k = j["sharp_bound"];
    require_keys(k, "sharp_bound", {"s", "slots", "triples"});
    read(k, "s", c.sharp_bound.s);
    read(k, "slots", c.sharp_bound.slots);
    read(k, "triples", c.sharp_bound.triples);
  }
  if (j.contains("opnorm")) {
    const json& k = j["opnorm"];
    require_keys(k, "opnorm", {"op", "symbol", "p1", "p2", "p", "target", "trials", "seed"});
    read(k, "op", c.opnorm.op);
    read(k, "symbol", c.opnorm.symbol);
    read(k, "p1", c.opnorm.p1);
    read(k, "p2", c.opnorm.p2);
    read(k, "p", c.opnorm.p);
    read(k, "target", c.opnorm.target);
    read(k, "trials", c.opnorm.trials);
    read(k, "seed", c.opnorm.seed);
  }
  if (j.contains("reconstruct")) {
    const json& k = j["reconstruct"];
    require_keys(k, "reconstruct", {"anchor", "side", "truncations", "iterated", "p", "q"});
    read(k, "anchor", c.reconstruct.anchor);
    read(k, "side", c.reconstruct.side);
    read(k, "truncations", c.reconstruct.truncations);
    read(k, "iterated", c.reconstruct.iterated);
    read(k, "p", c.reconstruct.p);
    read(k, "q", c.reconstruct.q);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::string json_digest(const json& j) { return Digest().add(j.dump()).hex(); }

}  // namespace bmolab
