#include "qew/gra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace qew {

void GreyConfig::validate() const {
  if (!(xi > 0.0 && xi <= 1.0)) throw std::invalid_argument("xi must lie in (0, 1]");
  if (!(sweep_start > 0.0 && sweep_start <= 1.0) || !(sweep_end > 0.0 && sweep_end <= 1.0))
    throw std::invalid_argument("sweep bounds must lie in (0, 1]");
  if (sweep_start > sweep_end) throw std::invalid_argument("sweep_start must not exceed sweep_end");
  if (!(sweep_step > 0.0)) throw std::invalid_argument("sweep_step must be positive");
}

namespace {

void check_reference(const std::vector<double>& reference, const NormalizedMatrix& comparison) {
  if (reference.size() != comparison.values.rows())
    throw std::invalid_argument("reference length does not match comparison rows");
  for (double s : reference)
    if (!(s >= 0.0 && s <= 1.0))
      throw std::invalid_argument("reference sequence must share the [0,1] scale");
}

}  // namespace

Matrix relational_coefficients(const std::vector<double>& reference,
                               const NormalizedMatrix& comparison, double xi) {
  const std::size_t m = comparison.values.rows(), n = comparison.values.cols();
  if (!(xi > 0.0 && xi <= 1.0)) throw std::invalid_argument("xi must lie in (0, 1]");
  check_reference(reference, comparison);

  double d_min = std::abs(reference[0] - comparison.values(0, 0));
  double d_max = d_min;
#pragma omp parallel for reduction(min : d_min) reduction(max : d_max) \
    if (m * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::abs(reference[i] - comparison.values(i, j));
      d_min = std::min(d_min, d);
      d_max = std::max(d_max, d);
    }

  Matrix gamma(m, n);
#pragma omp parallel for if (m * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (d_max == 0.0) {
        gamma(i, j) = 1.0;  // all sequences identical
      } else {
        const double d = std::abs(reference[i] - comparison.values(i, j));
        gamma(i, j) = (d_min + xi * d_max) / (d + xi * d_max);
      }
    }
  return gamma;
}

std::vector<double> relational_degrees(const Matrix& coefficients) {
  const std::size_t m = coefficients.rows(), n = coefficients.cols();
  if (m == 0) throw std::invalid_argument("relational_degrees needs at least one row");
  std::vector<double> degrees(n);
#pragma omp parallel for if (m * n >= kParallelCutoff)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += coefficients(i, j);
    degrees[j] = acc / static_cast<double>(m);
  }
  return degrees;
}

WeightVector gra_weights(const std::vector<double>& degrees) {
  double total = 0.0;
  for (double d : degrees) {
    if (!(d > 0.0)) throw std::invalid_argument("relational degrees must be positive");
    total += d;
  }
  WeightVector w;
  w.method = WeightMethod::Gra;
  w.weights.resize(degrees.size());
  for (std::size_t j = 0; j < degrees.size(); ++j) w.weights[j] = degrees[j] / total;
  return w;
}

GreyRelationReport grey_relation_report(const std::vector<double>& reference,
                                        const NormalizedMatrix& comparison, double xi) {
  GreyRelationReport report;
  report.coefficients = relational_coefficients(reference, comparison, xi);
  report.degrees = relational_degrees(report.coefficients);
  report.weights = gra_weights(report.degrees);
  report.xi_used = xi;
  return report;
}

namespace {

std::size_t sweep_grid_size(const GreyConfig& config) {
  return 1 + static_cast<std::size_t>(
                 std::floor((config.sweep_end - config.sweep_start) / config.sweep_step + 1e-9));
}

}  // namespace

XiSweepResult xi_sweep(const std::vector<double>& reference, const NormalizedMatrix& comparison,
                       const WeightVector& baseline, const GreyConfig& config) {
  config.validate();
  check_reference(reference, comparison);
  if (baseline.size() != comparison.values.cols())
    throw std::invalid_argument("baseline weight length does not match comparison columns");

  const std::size_t points = sweep_grid_size(config);
  if (points > 1000000) throw std::invalid_argument("xi sweep grid exceeds 1e6 points");
  XiSweepResult result;
  result.rows.resize(points);

#pragma omp parallel for if (points > 1)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(points); ++k) {
    double xi = config.sweep_start + static_cast<double>(k) * config.sweep_step;
    if (xi > config.sweep_end) xi = config.sweep_end;  // guard grid rounding
    const Matrix gamma = relational_coefficients(reference, comparison, xi);
    const std::vector<double> degrees = relational_degrees(gamma);
    const WeightVector w = gra_weights(degrees);
    double dist = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double d = w.weights[j] - baseline.weights[j];
      dist += d * d;
    }
    result.rows[k] = {xi, w.weights, std::sqrt(dist)};
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < points; ++k)
    if (result.rows[k].distance < result.rows[best].distance) best = k;
  result.best_xi = result.rows[best].xi;
  result.report = grey_relation_report(reference, comparison, result.best_xi);
  return result;
}

}  // namespace qew
