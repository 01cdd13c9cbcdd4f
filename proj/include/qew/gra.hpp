#pragma once

#include "qew/weighting.hpp"

namespace qew {

// Grey relational analysis settings. xi is the distinguishing coefficient
// used for direct coefficient computation; the sweep fields drive xi_sweep.
struct GreyConfig {
  double xi = 0.5;
  double sweep_start = 0.001;
  double sweep_end = 0.005;
  double sweep_step = 0.0001;

  void validate() const;
};

// Discrimination weakens above this xi; callers are warned, not stopped.
inline constexpr double kXiUpperGuideline = 0.5468;

struct GreyRelationReport {
  Matrix coefficients;          // m x n, every entry in (0, 1]
  std::vector<double> degrees;  // column means of the coefficients
  WeightVector weights;         // degrees normalized to sum 1
  double xi_used = 0.0;
};

// One evaluated grid point of the xi sweep.
struct XiSweepRow {
  double xi = 0.0;
  std::vector<double> weights;
  double distance = 0.0;  // L2 distance to the baseline weights
};

struct XiSweepResult {
  double best_xi = 0.0;
  GreyRelationReport report;  // full report at best_xi
  std::vector<XiSweepRow> rows;
};

// Relational coefficients of each comparison column against the reference
// sequence. Both must share the [0,1] scale; the min/max differences are
// taken over the whole m x n difference matrix.
Matrix relational_coefficients(const std::vector<double>& reference,
                               const NormalizedMatrix& comparison, double xi);
std::vector<double> relational_degrees(const Matrix& coefficients);
WeightVector gra_weights(const std::vector<double>& degrees);

GreyRelationReport grey_relation_report(const std::vector<double>& reference,
                                        const NormalizedMatrix& comparison, double xi);

// Evaluates GRA weights on the grid {start, start+step, ..., end} and picks
// the xi whose weights are L2-closest to the baseline (ties to the smaller xi).
XiSweepResult xi_sweep(const std::vector<double>& reference, const NormalizedMatrix& comparison,
                       const WeightVector& baseline, const GreyConfig& config);

}  // namespace qew
