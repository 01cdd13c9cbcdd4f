#include "qew/cli.hpp"

#include <iostream>
#include <string>

#include <CLI11.hpp>

namespace {

void add_input_options(CLI::App* cmd, qew::cli::CliConfig& config, std::string& delimiter) {
  cmd->add_option("--supply", config.supply_csv, "supply CSV: id column + one column per period");
  cmd->add_option("--orders", config.orders_csv,
                  "order-quantity CSV matching the supply file row for row");
  cmd->add_option("--indicators", config.indicators_csv,
                  "pre-derived indicator CSV (names header + direction row)");
  cmd->add_option("--delimiter", delimiter, "field delimiter (default ',')");
  cmd->add_option("--out", config.out_dir, "output directory (default '.')");
  cmd->add_option("--format", [&config](const std::vector<std::string>& values) {
        config.write_csv = false;
        config.write_json = false;
        for (const std::string& v : values) {
          if (v == "csv") config.write_csv = true;
          else if (v == "json") config.write_json = true;
          else return false;
        }
        return true;
      },
      "output formats: csv, json (default both)")->expected(1, 2)->delimiter(',');
}

void add_model_options(CLI::App* cmd, qew::cli::CliConfig& config, std::string& weight_mode) {
  cmd->add_option("--xi-start", config.grey.sweep_start, "xi sweep start (default 0.001)");
  cmd->add_option("--xi-end", config.grey.sweep_end, "xi sweep end (default 0.005)");
  cmd->add_option("--xi-step", config.grey.sweep_step, "xi sweep step (default 0.0001)");
  cmd->add_option("--q-min", config.solver.q_min, "q solver bracket lower bound (default 1e-6)");
  cmd->add_option("--q-max", config.solver.q_max, "q solver bracket upper bound (default 50)");
  cmd->add_flag("--normalize-entropy,!--no-normalize-entropy", config.solver.normalized,
                "use entropies normalized to [0,1] in the q constraint (default on)");
  cmd->add_option("--q-weight-mode", weight_mode,
                  "q weighting direction: entropy (literal) or utility (default entropy)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-entropy-weight TOPSIS evaluation pipeline"};
  app.require_subcommand(1);

  qew::cli::CliConfig config;
  std::string method = "ew";
  std::string weight_mode = "entropy";
  std::string delimiter = ",";

  CLI::App* evaluate = app.add_subcommand("evaluate", "score subjects with a chosen weighting");
  evaluate->add_option("--method", method, "ew|qew|cv|critic|iw|all (default ew)");
  evaluate->add_flag("--dump-matrices", config.dump_matrices,
                     "also write the normalized and probability matrices");
  add_input_options(evaluate, config, delimiter);
  add_model_options(evaluate, config, weight_mode);

  CLI::App* sweep = app.add_subcommand("sweep-xi", "scan the grey distinguishing coefficient grid");
  add_input_options(sweep, config, delimiter);
  add_model_options(sweep, config, weight_mode);

  CLI::App* robustness =
      app.add_subcommand("robustness", "recompute weights over seeded supplier subsets");
  add_input_options(robustness, config, delimiter);
  add_model_options(robustness, config, weight_mode);
  robustness->add_option("--seed", config.seed, "subset sampling seed (default 0)");
  robustness->add_option("--subset-sizes", config.subset_sizes,
                         "subset sizes, one iteration each (default: 10-step ladder up to m)")
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    config.method = qew::cli::parse_method(method);
    if (weight_mode == "entropy")
      config.q_weight_mode = qew::QWeightMode::Entropy;
    else if (weight_mode == "utility")
      config.q_weight_mode = qew::QWeightMode::Utility;
    else
      throw qew::ParseError("unknown --q-weight-mode '" + weight_mode + "'");
    if (delimiter.size() != 1)
      throw qew::ParseError("--delimiter must be a single character");
    config.delimiter = delimiter[0];
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (evaluate->parsed()) return qew::cli::cmd_evaluate(config);
  if (sweep->parsed()) return qew::cli::cmd_sweep_xi(config);
  if (robustness->parsed()) return qew::cli::cmd_robustness(config);
  return 1;
}
