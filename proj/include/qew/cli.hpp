#pragma once

#include "qew/pipeline.hpp"

#include <filesystem>

namespace qew::cli {

enum class Method { Ew, Qew, Cv, Critic, Iw, All };

Method parse_method(const std::string& name);  // throws on unknown name

struct CliConfig {
  // exactly one input mode: raw supply series (+ optional orders) or a
  // pre-derived indicator table
  std::filesystem::path supply_csv;
  std::filesystem::path orders_csv;
  std::filesystem::path indicators_csv;
  char delimiter = ',';

  Method method = Method::Ew;
  GreyConfig grey;
  QSolverConfig solver;
  QWeightMode q_weight_mode = QWeightMode::Entropy;

  std::filesystem::path out_dir = ".";
  bool write_csv = true;
  bool write_json = true;
  bool dump_matrices = false;  // also emit normalized.csv / probability.csv
  std::uint64_t seed = 0;
  std::vector<std::size_t> subset_sizes;  // robustness; empty = default ladder
};

// Exit status: 0 success, 1 input error, 2 computation error. Failures print
// one "error: ..." line on stderr; output files are written whole or not at
// all.
int cmd_evaluate(const CliConfig& config);
int cmd_sweep_xi(const CliConfig& config);
int cmd_robustness(const CliConfig& config);

}  // namespace qew::cli
