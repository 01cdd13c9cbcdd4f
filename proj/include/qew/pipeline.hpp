#pragma once

#include "qew/gra.hpp"
#include "qew/topsis.hpp"

#include <cstdint>

namespace qew {

struct QModelConfig {
  GreyConfig grey;
  QSolverConfig solver;
  QWeightMode weight_mode = QWeightMode::Entropy;
  // Skips the GRA/constraint-solve stage and uses this q directly.
  std::optional<double> forced_q;
};

// One full evaluation: the weighting that drove it, the scored table, and the
// grey/q diagnostics when the q-model produced it.
struct EvaluationResult {
  WeightMethod method = WeightMethod::Shannon;
  WeightVector weight_vector;
  EntropyReport entropy_report;
  ScoreTable score_table;
  std::optional<GreyRelationReport> grey_report;
  std::optional<double> q_mean;
};

struct ComparisonDiagnostics {
  std::vector<double> delta_per_indicator;  // |W_S - W_T| / W_T
  double delta_mean = 0.0;
  std::size_t impact_count = 0;
  double impact_rate = 0.0;
};

struct RobustnessIteration {
  std::size_t subset_size = 0;
  std::vector<std::string> subset_ids;     // drawn suppliers, original order
  std::vector<double> w0, w1;              // baseline / q-model weights
  std::vector<double> rel_err0, rel_err1;  // against each model's mean weight
};

struct RobustnessReport {
  std::vector<std::string> indicator_names;
  std::vector<RobustnessIteration> iterations;
  std::vector<double> w0_mean, w1_mean;
  std::vector<double> w0_var, w1_var;  // population variance across iterations
};

// Classical chain: range normalize, probabilities, entropy weights, then the
// TOPSIS stage (L2 normalize, weight, ideal schemes, distances, rank).
EvaluationResult run_ew_topsis(const IndicatorMatrix& matrix);

// q-corrected chain: the classical scores drive a xi sweep, the selected GRA
// weights act as per-column entropy targets for the q solve, and the averaged
// q re-weights the same TOPSIS stage.
EvaluationResult run_q_ew_topsis(const IndicatorMatrix& matrix, const QModelConfig& config = {});

// TOPSIS stage under a caller-supplied weighting; used for the comparison
// methods.
EvaluationResult evaluate_with_weights(const IndicatorMatrix& matrix, WeightVector weights,
                                       EntropyReport report = {});

ComparisonDiagnostics delta_proportions(const WeightVector& baseline, const WeightVector& corrected);

// Number and fraction of ids whose rank position differs between two tables.
std::pair<std::size_t, double> impact_rate(const ScoreTable& a, const ScoreTable& b);

struct MethodOutcome {
  WeightMethod method = WeightMethod::Shannon;
  std::optional<EvaluationResult> result;
  std::string error;  // set when the method failed
};

// Runs all five weighting schemes over the identical TOPSIS stage, in the
// fixed order Shannon, Tsallis, CV, CRITIC, IW. A failing method reports its
// error without aborting the rest.
std::vector<MethodOutcome> compare_methods(const IndicatorMatrix& matrix,
                                           const QModelConfig& config = {});

// Draws a seeded random supplier subset per requested size, recomputes the
// baseline and q-model weights on each, and aggregates their spread.
RobustnessReport robustness_sweep(const RawSupplyData& data,
                                  const std::vector<std::size_t>& subset_sizes,
                                  std::uint64_t seed, const QModelConfig& config = {});

}  // namespace qew
