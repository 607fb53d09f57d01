#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>

#include "CLI11.hpp"

#include "bmolab/csv.hpp"
#include "bmolab/harness/config.hpp"
#include "bmolab/harness/experiments.hpp"

namespace {

struct Options {
  std::string config;
  std::string input;
  std::string output;
  std::string csv;
  std::string dump_config;
  int indent = 2;
};

int run(const std::string& command, const Options& o) {
  bmolab::ExperimentConfig config;
  if (!o.config.empty()) config = bmolab::load_config(o.config);

  std::optional<bmolab::GridFunction> input;
  if (!o.input.empty()) {
    input = bmolab::load_csv(o.input);
    // The grid of the input file overrides the configured one.
    config.grid = {input->grid().dim(), input->grid().side(), input->grid().cells_per_axis()};
  }

  const bmolab::RunOutput out = bmolab::run_command(command, config, input ? &*input : nullptr);
  const std::string text = bmolab::make_report(command, config, out).dump(o.indent);
  if (o.output.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream f(o.output);
    if (!f) throw bmolab::ConfigError("cannot write '" + o.output + "'");
    f << text << '\n';
  }
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw bmolab::ConfigError("cannot write '" + o.csv + "'");
    out.table.write_csv(f);
  }
  return out.passed ? 0 : 1;
}

const char* describe(std::string_view name) {
  if (name == "norm") return "BMO norms of the corpus or an input function";
  if (name == "weight-check") return "A1 and Ap constants of the configured weight";
  if (name == "maximal") return "Maximal function statistics";
  if (name == "cz-decompose") return "Calderon-Zygmund selection and validation";
  if (name == "jn-decay") return "Exponential decay fit of the oscillation distribution";
  if (name == "lemma1") return "Strong versus weak-type BMO inequality";
  if (name == "equivalence") return "Ratio bands between BMO variants";
  if (name == "sharp-bound") return "Pointwise sharp-function bound for commutators";
  if (name == "opnorm") return "Commutator operator-norm probe";
  if (name == "reconstruct") return "Oscillation reconstruction from a kernel expansion";
  if (name == "report") return "Run every experiment and summarise";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted BMO and bilinear commutator experiments"};
  app.require_subcommand(0, 1);
  Options o;
  app.add_option("--dump-config", o.dump_config, "Write the default config as JSON and exit");

  for (auto name : bmolab::command_names()) {
    CLI::App* sub = app.add_subcommand(std::string(name), describe(name));
    sub->add_option("-c,--config", o.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
    sub->add_option("-o,--output", o.output, "JSON report path (default stdout)");
    sub->add_option("--csv", o.csv, "CSV table path");
    sub->add_option("--indent", o.indent, "JSON indent; -1 for compact");
    if (name == "norm" || name == "maximal" || name == "cz-decompose" || name == "jn-decay" ||
        name == "reconstruct") {
      sub->add_option("-i,--input", o.input, "Function CSV (header dim,N,L then cell values)")
          ->check(CLI::ExistingFile);
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (!o.dump_config.empty()) {
      std::ofstream f(o.dump_config);
      f << bmolab::to_json(bmolab::ExperimentConfig{}).dump(2) << '\n';
      return f ? 0 : 2;
    }
    const auto subs = app.get_subcommands();
    if (subs.empty()) {
      std::cout << app.help();
      return 2;
    }
    return run(subs.front()->get_name(), o);
  } catch (const bmolab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
