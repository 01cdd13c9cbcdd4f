#pragma once

#include "qew/transforms.hpp"

#include <optional>
#include <utility>

namespace qew {

enum class WeightMethod { Shannon, Tsallis, Gra, Cv, Critic, Iw };
const char* to_string(WeightMethod m);

// Non-negative weights summing to 1 (within 1e-12), tagged with the scheme
// that produced them.
struct WeightVector {
  std::vector<double> weights;
  WeightMethod method = WeightMethod::Shannon;
  std::optional<double> q;  // Tsallis only

  std::size_t size() const { return weights.size(); }
};

struct EntropyReport {
  std::vector<double> entropies;  // e_j (classical) or q-entropies
  std::vector<double> utilities;  // 1 - e_j, classical scheme only
  std::vector<double> q_values;   // per-indicator solved q, q-scheme only
  double q_mean = 1.0;
};

// |q - 1| below this falls back to the classical (logarithmic) formulas.
inline constexpr double kClassicalQTolerance = 1e-9;

// Discrimination entropy of one probability column, normalized by ln m so the
// uniform distribution scores 1. 0*ln 0 counts as 0.
double shannon_entropy(const std::vector<double>& p, bool normalized = true);

// Classical entropy weights: utility d_j = 1 - e_j, weights proportional to
// utility. All-zero utilities (every column uniform) fall back to uniform
// weights.
std::pair<EntropyReport, WeightVector> shannon_weights(const ProbabilityMatrix& P);

// Deformed logarithm (x^(1-q) - 1) / (1 - q) and its inverse
// [1 + (1-q)x]^(1/(1-q)). q_exp throws std::domain_error outside its cutoff
// 1 + (1-q)x > 0.
double q_log(double x, double q);
double q_exp(double x, double q);

// One-parameter entropy (sum_i p_i^q - 1) / (1 - q), with 0^q := 0. The
// normalized form divides by q_log(m, q) so the uniform distribution scores 1
// for every q.
double tsallis_entropy(const std::vector<double>& p, double q, bool normalized);

struct QSolverConfig {
  double q_min = 1e-6;
  double q_max = 50.0;
  int grid_points = 200;    // geometric scan grid over (q_min, q_max]
  double tolerance = 1e-10;
  bool normalized = true;   // entropy convention used in the constraint

  void validate() const;
};

// Solves tsallis_entropy(p, q, normalized) = target for q by scanning the
// geometric grid for a sign change and bisecting it. Returns exactly 1 when
// the scan finds no sign change (no representable solution).
double solve_q(const std::vector<double>& p, double target, const QSolverConfig& config = {});

double average_q(const std::vector<double>& q_values);

// Direction of the q-entropy weighting: Entropy is the literal
// entropy-proportional form, Utility the (1 - entropy)-proportional variant.
enum class QWeightMode { Entropy, Utility };

std::pair<EntropyReport, WeightVector> q_entropy_weights(const ProbabilityMatrix& P, double q,
                                                         QWeightMode mode = QWeightMode::Entropy,
                                                         bool normalized = true);

// Comparison weightings, all computed on the forward-normalized matrix with
// population statistics.
WeightVector cv_weights(const IndicatorMatrix& matrix);
WeightVector critic_weights(const IndicatorMatrix& matrix);
WeightVector iw_weights(const IndicatorMatrix& matrix);

}  // namespace qew
