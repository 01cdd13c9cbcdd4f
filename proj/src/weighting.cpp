#include "qew/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>

namespace qew {

const char* to_string(WeightMethod m) {
  switch (m) {
    case WeightMethod::Shannon: return "shannon";
    case WeightMethod::Tsallis: return "tsallis";
    case WeightMethod::Gra: return "gra";
    case WeightMethod::Cv: return "cv";
    case WeightMethod::Critic: return "critic";
    case WeightMethod::Iw: return "iw";
  }
  return "unknown";
}

namespace {

std::vector<double> normalize_or_uniform(std::vector<double> xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  if (total == 0.0) return std::vector<double>(xs.size(), 1.0 / static_cast<double>(xs.size()));
  for (double& x : xs) x /= total;
  return xs;
}

}  // namespace

double shannon_entropy(const std::vector<double>& p, bool normalized) {
  double acc = 0.0;
  for (double v : p)
    if (v > 0.0) acc += v * std::log(v);
  const double raw = -acc;
  if (!normalized) return raw;
  if (p.size() < 2) return 0.0;
  return raw / std::log(static_cast<double>(p.size()));
}

std::pair<EntropyReport, WeightVector> shannon_weights(const ProbabilityMatrix& P) {
  const std::size_t m = P.values.rows(), n = P.values.cols();
  EntropyReport report;
  report.entropies.resize(n);
  report.utilities.resize(n);

  const double log_m = std::log(static_cast<double>(m));
#pragma omp parallel for if (m * n >= kParallelCutoff)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double v = P.values(i, j);
      if (v > 0.0) acc += v * std::log(v);
    }
    report.entropies[j] = m < 2 ? 0.0 : -acc / log_m;
    // the normalized entropy is at most 1; keep rounding noise from pushing a
    // utility negative
    report.utilities[j] = std::max(0.0, 1.0 - report.entropies[j]);
  }

  WeightVector w;
  w.method = WeightMethod::Shannon;
  w.weights = normalize_or_uniform(report.utilities);
  return {std::move(report), std::move(w)};
}

double q_log(double x, double q) {
  if (x <= 0.0) throw std::domain_error("q_log requires x > 0");
  if (std::abs(q - 1.0) < kClassicalQTolerance) return std::log(x);
  return std::expm1((1.0 - q) * std::log(x)) / (1.0 - q);
}

double q_exp(double x, double q) {
  if (std::abs(q - 1.0) < kClassicalQTolerance) return std::exp(x);
  const double base = 1.0 + (1.0 - q) * x;
  if (base <= 0.0)
    throw std::domain_error("q_exp cutoff violated: 1 + (1-q)x <= 0");
  return std::exp(std::log1p((1.0 - q) * x) / (1.0 - q));
}

double tsallis_entropy(const std::vector<double>& p, double q, bool normalized) {
  double raw;
  if (std::abs(q - 1.0) < kClassicalQTolerance) {
    raw = shannon_entropy(p, false);
  } else {
    double powsum = 0.0;
    for (double v : p)
      if (v > 0.0) powsum += std::pow(v, q);  // 0^q := 0
    raw = (powsum - 1.0) / (1.0 - q);
  }
  if (!normalized) return raw;
  if (p.size() < 2) return 0.0;
  return raw / q_log(static_cast<double>(p.size()), q);
}

void QSolverConfig::validate() const {
  if (!(q_min > 0.0) || !(q_max > q_min) || grid_points < 2 || !(tolerance > 0.0))
    throw std::invalid_argument("solve_q bracket is invalid");
}

namespace {

double bisect_bracket(double lo, double hi, double f_lo, double tolerance,
                      const std::function<double(double)>& residual) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f_mid = residual(mid);
    if (std::abs(f_mid) < tolerance) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(f_lo) <= std::abs(residual(hi)) ? lo : hi;
}

}  // namespace

double solve_q(const std::vector<double>& p, double target, const QSolverConfig& config) {
  if (!(target >= 0.0 && target <= 1.0))
    throw std::invalid_argument("solve_q target must lie in [0,1]");
  config.validate();

  const std::function<double(double)> residual = [&](double q) {
    return tsallis_entropy(p, q, config.normalized) - target;
  };

  // The classical point satisfying the constraint takes precedence; this also
  // absorbs the uniform column, whose normalized entropy is 1 for every q.
  if (std::abs(residual(1.0)) < config.tolerance) return 1.0;

  // Geometric scan of (q_min, q_max]. The normalized entropy need not be
  // monotone in q, so the constraint can have several roots; the one nearest
  // the classical point q = 1 is returned, anchoring the correction to the
  // classical model.
  const double ratio = std::pow(config.q_max / config.q_min, 1.0 / config.grid_points);
  double best = 1.0, best_gap = -1.0;
  double prev_q = config.q_min * ratio;
  double prev_f = residual(prev_q);
  for (int k = 2; k <= config.grid_points; ++k) {
    const double q = k == config.grid_points ? config.q_max : config.q_min * std::pow(ratio, k);
    const double f = residual(q);
    if (prev_f * f < 0.0) {
      const double root = bisect_bracket(prev_q, q, prev_f, config.tolerance, residual);
      const double gap = std::abs(root - 1.0);
      if (best_gap < 0.0 || gap < best_gap) {
        best = root;
        best_gap = gap;
      }
    }
    prev_q = q;
    prev_f = f;
  }
  if (best_gap < 0.0) return 1.0;  // no sign change: no representable solution
  return best;
}

double average_q(const std::vector<double>& q_values) {
  if (q_values.empty()) throw std::invalid_argument("average_q needs at least one value");
  double acc = 0.0;
  for (double q : q_values) acc += q;
  return acc / static_cast<double>(q_values.size());
}

std::pair<EntropyReport, WeightVector> q_entropy_weights(const ProbabilityMatrix& P, double q,
                                                         QWeightMode mode, bool normalized) {
  const std::size_t m = P.values.rows(), n = P.values.cols();
  EntropyReport report;
  report.entropies.resize(n);
  report.q_mean = q;

#pragma omp parallel for if (m * n >= kParallelCutoff)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j)
    report.entropies[j] = tsallis_entropy(P.values.column(j), q, normalized);

  std::vector<double> mass(n);
  for (std::size_t j = 0; j < n; ++j)
    mass[j] = mode == QWeightMode::Entropy ? report.entropies[j]
                                           : std::max(0.0, 1.0 - report.entropies[j]);

  WeightVector w;
  w.method = WeightMethod::Tsallis;
  w.q = q;
  w.weights = normalize_or_uniform(std::move(mass));
  return {std::move(report), std::move(w)};
}

namespace {

struct ColumnStats {
  double mean;
  double sigma;  // population
};

ColumnStats column_stats(const Matrix& x, std::size_t j) {
  const std::size_t m = x.rows();
  double mean = 0.0;
  for (std::size_t i = 0; i < m; ++i) mean += x(i, j);
  mean /= static_cast<double>(m);
  double var = 0.0;
  for (std::size_t i = 0; i < m; ++i) var += (x(i, j) - mean) * (x(i, j) - mean);
  var /= static_cast<double>(m);
  return {mean, std::sqrt(var)};
}

// Pearson correlation matrix; pairs with a zero-variance member correlate 0.
Matrix correlation_matrix(const Matrix& x) {
  const std::size_t m = x.rows(), n = x.cols();
  std::vector<ColumnStats> stats(n);
  for (std::size_t j = 0; j < n; ++j) stats[j] = column_stats(x, j);

  Matrix r(n, n);
#pragma omp parallel for if (n * n * m >= kParallelCutoff)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
    r(j, j) = 1.0;
    for (std::size_t k = j + 1; k < n; ++k) {
      double value = 0.0;
      if (stats[j].sigma > 0.0 && stats[k].sigma > 0.0) {
        double cov = 0.0;
        for (std::size_t i = 0; i < m; ++i)
          cov += (x(i, j) - stats[j].mean) * (x(i, k) - stats[k].mean);
        cov /= static_cast<double>(m);
        value = cov / (stats[j].sigma * stats[k].sigma);
      }
      r(j, k) = value;
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < j; ++k) r(j, k) = r(k, j);
  return r;
}

// Rank-revealing Gauss-Jordan solve of the symmetric system a*beta = b.
// Columns without a usable pivot pin their variable to zero; an inconsistent
// leftover row means the correlation structure is unusable.
std::vector<double> solve_pinned(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  std::vector<std::size_t> pivot_row(n, n);
  std::vector<bool> used(n, false);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n;
    double best_abs = 1e-12;
    for (std::size_t row = 0; row < n; ++row)
      if (!used[row] && std::abs(a(row, col)) > best_abs) {
        best = row;
        best_abs = std::abs(a(row, col));
      }
    if (best == n) continue;
    used[best] = true;
    pivot_row[col] = best;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == best || a(row, col) == 0.0) continue;
      const double f = a(row, col) / a(best, col);
      for (std::size_t c = 0; c < n; ++c) a(row, c) -= f * a(best, c);
      a(row, col) = 0.0;
      b[row] -= f * b[best];
    }
  }
  for (std::size_t row = 0; row < n; ++row) {
    if (used[row]) continue;
    double coeff = 0.0;
    for (std::size_t c = 0; c < n; ++c) coeff = std::max(coeff, std::abs(a(row, c)));
    if (coeff < 1e-9 && std::abs(b[row]) > 1e-9)
      throw ComputationError("singular correlation structure");
  }
  std::vector<double> beta(n, 0.0);
  for (std::size_t col = 0; col < n; ++col)
    if (pivot_row[col] != n) beta[col] = b[pivot_row[col]] / a(pivot_row[col], col);
  return beta;
}

}  // namespace

WeightVector cv_weights(const IndicatorMatrix& matrix) {
  const NormalizedMatrix norm = forward_normalize(matrix);
  const std::size_t n = norm.values.cols();
  std::vector<double> cv(n);
  for (std::size_t j = 0; j < n; ++j) {
    const ColumnStats s = column_stats(norm.values, j);
    if (s.mean == 0.0)
      throw ComputationError("cv_weights: column '" + matrix.names[j] + "' has zero mean");
    cv[j] = s.sigma / s.mean;
  }
  WeightVector w;
  w.method = WeightMethod::Cv;
  w.weights = normalize_or_uniform(std::move(cv));
  return w;
}

WeightVector critic_weights(const IndicatorMatrix& matrix) {
  if (matrix.values.cols() < 2)
    throw std::invalid_argument("critic_weights needs at least 2 indicators");
  const NormalizedMatrix norm = forward_normalize(matrix);
  const std::size_t n = norm.values.cols();
  const Matrix r = correlation_matrix(norm.values);

  std::vector<double> c(n);
  for (std::size_t j = 0; j < n; ++j) {
    const ColumnStats s = column_stats(norm.values, j);
    double conflict = 0.0;
    for (std::size_t k = 0; k < n; ++k) conflict += 1.0 - r(j, k);
    c[j] = s.sigma * conflict;
  }
  WeightVector w;
  w.method = WeightMethod::Critic;
  w.weights = normalize_or_uniform(std::move(c));
  return w;
}

WeightVector iw_weights(const IndicatorMatrix& matrix) {
  const std::size_t n = matrix.values.cols();
  if (n < 2) throw std::invalid_argument("iw_weights needs at least 2 indicators");
  const NormalizedMatrix norm = forward_normalize(matrix);
  const Matrix r = correlation_matrix(norm.values);

  // multiple correlation of column j against the rest, in correlation space:
  // solve R_sub beta = r_vec, R_j^2 = beta . r_vec
  std::vector<double> rj(n);
  int singular = 0;
#pragma omp parallel for if (n >= 16)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
    Matrix sub(n - 1, n - 1);
    std::vector<double> rv(n - 1);
    std::size_t a = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == static_cast<std::size_t>(j)) continue;
      rv[a] = r(k, j);
      std::size_t bcol = 0;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == static_cast<std::size_t>(j)) continue;
        sub(a, bcol) = r(k, l);
        ++bcol;
      }
      ++a;
    }
    try {
      const std::vector<double> beta = solve_pinned(std::move(sub), rv);
      double r2 = 0.0;
      for (std::size_t k = 0; k < n - 1; ++k) r2 += beta[k] * rv[k];
      r2 = std::clamp(r2, 0.0, 1.0);
      rj[j] = std::max(std::sqrt(r2), 1e-6);
    } catch (const ComputationError&) {
#pragma omp atomic write
      singular = 1;  // rethrown outside the parallel region
    }
  }
  if (singular) throw ComputationError("iw_weights: singular correlation structure");

  std::vector<double> inv(n);
  for (std::size_t j = 0; j < n; ++j) inv[j] = 1.0 / rj[j];
  WeightVector w;
  w.method = WeightMethod::Iw;
  w.weights = normalize_or_uniform(std::move(inv));
  return w;
}

}  // namespace qew
