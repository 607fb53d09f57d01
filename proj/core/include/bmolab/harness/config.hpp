#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bmolab/core.hpp"
#include "bmolab/harness/corpus.hpp"

namespace bmolab {

struct GridConfig {
  int dim = 1;
  double side = 1.0;
  std::size_t cells = 128;
};

struct Caps {
  double ratio_band = 25.0;
  double band_stability = 2.0;
  double fefferman_stein = 50.0;
  double fs_stability = 1.5;
  double sharp_stability = 0.2;
  double opnorm_growth = 1.5;
  double opnorm_tolerance = 0.25;
  double reconstruction_error = 0.1;
};

struct Lemma1Config {
  std::vector<std::pair<double, double>> pairs{{2.0, 4.0}, {1.5, 3.0}, {3.0, 6.0}};
};

struct EquivalenceConfig {
  std::vector<std::string> pairings{"weak_type:2", "sub_unit_power:0.5", "centered:0.5", "power:2"};
};

struct MaximalConfig {
  std::vector<std::string> kinds{"hl", "sharp", "hl_delta:0.5", "sharp_delta:0.5"};
  std::string path = "automatic";
};

struct CzConfig {
  std::vector<double> thresholds{2.718281828459045, 4.0};
  std::vector<double> exponents{0.3, 0.7};
};

struct JnConfig {
  double center = 0.25;         // log singularity, relative coordinates
  double r = 0.5;
};

struct FeffermanSteinConfig {
  std::vector<double> exponents{1.5, 2.0};
  double delta = 0.5;
};

struct SharpBoundConfig {
  double s = 1.5;
  std::vector<std::string> slots{"first", "second", "iterated"};
  std::size_t triples = 20;
};

struct OpnormConfig {
  std::string op = "first";
  std::string symbol = "log";  // log, linear, steps
  double p1 = 4.0;
  double p2 = 4.0;
  double p = 2.0;
  std::string target = "strong";
  std::size_t trials = 30;
  std::uint64_t seed = 1;
};

struct ReconstructConfig {
  std::size_t anchor = 60;  // cell index of Q along every axis
  std::size_t side = 8;
  std::vector<std::size_t> truncations{8, 16, 32};
  bool iterated = false;
  double p = 2.0;
  double q = 0.5;
};

/// Everything an experiment run depends on. Missing JSON keys keep the
/// defaults below; unknown keys are rejected.
struct ExperimentConfig {
  GridConfig grid;
  std::string weight = "const";
  std::string kernel = "odd1d";
  std::string boundary = "truncated";
  CorpusSpec corpus;
  std::vector<std::string> norms{"strong:1", "strong:2", "weak:2", "inf_centered:0.5",
                                 "stromberg:0.25"};
  std::string family = "dyadic";
  Caps caps;
  Lemma1Config lemma1;
  EquivalenceConfig equivalence;
  MaximalConfig maximal;
  CzConfig cz;
  JnConfig jn;
  FeffermanSteinConfig fefferman_stein;
  SharpBoundConfig sharp_bound;
  OpnormConfig opnorm;
  ReconstructConfig reconstruct;

  Grid make_grid() const;
  // Parses every preset string; ConfigError on the first bad one.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

// FNV-1a over the canonical (sorted-key, compact) JSON dump.
std::string json_digest(const nlohmann::json& j);

}  // namespace bmolab
