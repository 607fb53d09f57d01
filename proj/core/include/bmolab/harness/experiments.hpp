#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bmolab/core.hpp"
#include "bmolab/harness/config.hpp"

namespace bmolab {

/// Flat table for the CSV side output.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  void write_csv(std::ostream& os) const;
};

std::string format_number(double v);

struct RunOutput {
  nlohmann::json result;
  Table table;
  bool passed = true;
};

/// Symbol presets for commutator experiments: "log" (singular at the box
/// center), "linear" (b(x) = x_1) and "steps" (first steps member of the corpus seed).
GridFunction symbol_from_preset(const Grid& grid, std::string_view preset, std::uint64_t seed = 1);

// `input` replaces the default test function where a subcommand takes one.
RunOutput run_norm(const ExperimentConfig& c, const GridFunction* input = nullptr);
RunOutput run_weight_check(const ExperimentConfig& c);
RunOutput run_maximal(const ExperimentConfig& c, const GridFunction* input = nullptr);
RunOutput run_cz_decompose(const ExperimentConfig& c, const GridFunction* input = nullptr);
RunOutput run_jn_decay(const ExperimentConfig& c, const GridFunction* input = nullptr);
RunOutput run_lemma1(const ExperimentConfig& c);
RunOutput run_equivalence(const ExperimentConfig& c);
RunOutput run_sharp_bound(const ExperimentConfig& c);
RunOutput run_opnorm(const ExperimentConfig& c);
RunOutput run_reconstruct(const ExperimentConfig& c, const GridFunction* input = nullptr);
// Every experiment above with its default inputs; the table lists one line per experiment.
RunOutput run_report(const ExperimentConfig& c);

const std::vector<std::string_view>& command_names();
RunOutput run_command(std::string_view command, const ExperimentConfig& c,
                      const GridFunction* input = nullptr);

/// {command, config, config_digest, passed, result, result_digest}
nlohmann::json make_report(std::string_view command, const ExperimentConfig& c, const RunOutput& out);

}  // namespace bmolab
