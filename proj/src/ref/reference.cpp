#include "ref/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qew::ref {

double population_variance(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / n;
}

double sum(const std::vector<double>& xs) {
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc;
}

std::size_t count_positive(const std::vector<double>& xs) {
  std::size_t c = 0;
  for (double x : xs)
    if (x > 0.0) ++c;
  return c;
}

Matrix range_normalize(const Matrix& x, const std::vector<Direction>& directions) {
  const std::size_t m = x.rows(), n = x.cols();
  Matrix out(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    double lo = x(0, j), hi = x(0, j);
    for (std::size_t i = 1; i < m; ++i) {
      lo = std::min(lo, x(i, j));
      hi = std::max(hi, x(i, j));
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (hi == lo) {
        out(i, j) = 1.0;  // constant column: no information, maps to all-ones
      } else if (directions[j] == Direction::Min) {
        out(i, j) = (hi - x(i, j)) / (hi - lo);
      } else {
        out(i, j) = (x(i, j) - lo) / (hi - lo);
      }
    }
  }
  return out;
}

Matrix probability(const Matrix& xprime) {
  const std::size_t m = xprime.rows(), n = xprime.cols();
  Matrix p(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    double colsum = 0.0;
    for (std::size_t i = 0; i < m; ++i) colsum += xprime(i, j);
    for (std::size_t i = 0; i < m; ++i) p(i, j) = xprime(i, j) / colsum;
  }
  return p;
}

Matrix l2_normalize(const Matrix& x) {
  const std::size_t m = x.rows(), n = x.cols();
  Matrix z(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) ss += x(i, j) * x(i, j);
    const double norm = std::sqrt(ss);
    for (std::size_t i = 0; i < m; ++i) z(i, j) = norm == 0.0 ? 0.0 : x(i, j) / norm;
  }
  return z;
}

std::vector<double> shannon_entropies(const Matrix& p) {
  const std::size_t m = p.rows(), n = p.cols();
  std::vector<double> e(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (p(i, j) > 0.0) acc += p(i, j) * std::log(p(i, j));
    e[j] = -acc / std::log(static_cast<double>(m));
  }
  return e;
}

std::vector<double> entropy_weights(const Matrix& p) {
  const std::vector<double> e = shannon_entropies(p);
  std::vector<double> d(e.size());
  double total = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    d[j] = 1.0 - e[j];
    total += d[j];
  }
  if (total == 0.0) return std::vector<double>(e.size(), 1.0 / static_cast<double>(e.size()));
  for (double& w : d) w /= total;
  return d;
}

double tsallis_raw(const std::vector<double>& p, double q) {
  if (std::abs(q - 1.0) < 1e-9) {
    double acc = 0.0;
    for (double v : p)
      if (v > 0.0) acc += v * std::log(v);
    return -acc;
  }
  double powsum = 0.0;
  for (double v : p)
    if (v > 0.0) powsum += std::pow(v, q);
  return (powsum - 1.0) / (1.0 - q);
}

double tsallis_normalized(const std::vector<double>& p, double q) {
  const double m = static_cast<double>(p.size());
  if (p.size() < 2) return 0.0;
  if (std::abs(q - 1.0) < 1e-9) return tsallis_raw(p, q) / std::log(m);
  const double lnq_m = (std::pow(m, 1.0 - q) - 1.0) / (1.0 - q);
  return tsallis_raw(p, q) / lnq_m;
}

std::vector<double> ew_topsis_scores(const Matrix& x, const std::vector<Direction>& directions) {
  return topsis_scores_with_weights(x, directions, entropy_weights(probability(range_normalize(x, directions))));
}

std::vector<double> topsis_scores_with_weights(const Matrix& x,
                                               const std::vector<Direction>& directions,
                                               const std::vector<double>& w) {
  const std::size_t m = x.rows(), n = x.cols();
  const Matrix xprime = range_normalize(x, directions);
  const Matrix z = l2_normalize(xprime);

  Matrix zstar(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) zstar(i, j) = z(i, j) * w[j];

  std::vector<double> best(n), worst(n);
  for (std::size_t j = 0; j < n; ++j) {
    best[j] = zstar(0, j);
    worst[j] = zstar(0, j);
    for (std::size_t i = 1; i < m; ++i) {
      best[j] = std::max(best[j], zstar(i, j));
      worst[j] = std::min(worst[j], zstar(i, j));
    }
  }

  std::vector<double> scores(m);
  for (std::size_t i = 0; i < m; ++i) {
    double dp = 0.0, dm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      dp += (best[j] - zstar(i, j)) * (best[j] - zstar(i, j));
      dm += (worst[j] - zstar(i, j)) * (worst[j] - zstar(i, j));
    }
    dp = std::sqrt(dp);
    dm = std::sqrt(dm);
    scores[i] = (dp + dm) == 0.0 ? 50.0 : 100.0 * dm / (dp + dm);
  }
  return scores;
}

Matrix gra_coefficients(const std::vector<double>& reference, const Matrix& comparison, double xi) {
  const std::size_t m = comparison.rows(), n = comparison.cols();
  Matrix delta(m, n);
  double dmin = std::abs(reference[0] - comparison(0, 0));
  double dmax = dmin;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      delta(i, j) = std::abs(reference[i] - comparison(i, j));
      dmin = std::min(dmin, delta(i, j));
      dmax = std::max(dmax, delta(i, j));
    }
  Matrix gamma(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gamma(i, j) = dmax == 0.0 ? 1.0 : (dmin + xi * dmax) / (delta(i, j) + xi * dmax);
  return gamma;
}

std::vector<double> gra_degrees(const Matrix& coefficients) {
  const std::size_t m = coefficients.rows(), n = coefficients.cols();
  std::vector<double> deg(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += coefficients(i, j);
    deg[j] = acc / static_cast<double>(m);
  }
  return deg;
}

std::vector<double> normalize_to_sum_one(const std::vector<double>& xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  std::vector<double> out(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) out[j] = xs[j] / total;
  return out;
}

std::vector<double> cv_weights(const Matrix& x, const std::vector<Direction>& directions) {
  const Matrix xprime = range_normalize(x, directions);
  const std::size_t n = xprime.cols();
  std::vector<double> cv(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<double> col = xprime.column(j);
    double mean = sum(col) / static_cast<double>(col.size());
    cv[j] = std::sqrt(population_variance(col)) / mean;
    total += cv[j];
  }
  if (total == 0.0) return std::vector<double>(n, 1.0 / static_cast<double>(n));
  for (double& w : cv) w /= total;
  return cv;
}

namespace {

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = sum(a) / n, mb = sum(b) / n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return cov / std::sqrt(va * vb);
}

// Gaussian elimination with partial pivoting; throws on a singular system.
std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (std::abs(a[piv][k]) < 1e-12) throw std::runtime_error("singular system");
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> xsol(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * xsol[j];
    xsol[i] = acc / a[i][i];
  }
  return xsol;
}

}  // namespace

std::vector<double> critic_weights(const Matrix& x, const std::vector<Direction>& directions) {
  const Matrix xprime = range_normalize(x, directions);
  const std::size_t n = xprime.cols();
  std::vector<std::vector<double>> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = xprime.column(j);

  std::vector<double> c(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double sigma = std::sqrt(population_variance(cols[j]));
    double conflict = 0.0;
    for (std::size_t k = 0; k < n; ++k) conflict += 1.0 - pearson(cols[j], cols[k]);
    c[j] = sigma * conflict;
    total += c[j];
  }
  if (total == 0.0) return std::vector<double>(n, 1.0 / static_cast<double>(n));
  for (double& w : c) w /= total;
  return c;
}

std::vector<double> iw_weights(const Matrix& x, const std::vector<Direction>& directions) {
  const Matrix xprime = range_normalize(x, directions);
  const std::size_t m = xprime.rows(), n = xprime.cols();

  std::vector<double> r(n);
  for (std::size_t j = 0; j < n; ++j) {
    // regress centered column j on the other centered columns
    std::vector<double> y = xprime.column(j);
    const double my = sum(y) / static_cast<double>(m);
    for (double& v : y) v -= my;

    std::vector<std::vector<double>> preds;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      std::vector<double> col = xprime.column(k);
      const double mc = sum(col) / static_cast<double>(m);
      for (double& v : col) v -= mc;
      preds.push_back(std::move(col));
    }
    const std::size_t p = preds.size();
    std::vector<std::vector<double>> xtx(p, std::vector<double>(p, 0.0));
    std::vector<double> xty(p, 0.0);
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = 0; b < p; ++b)
        for (std::size_t i = 0; i < m; ++i) xtx[a][b] += preds[a][i] * preds[b][i];
      for (std::size_t i = 0; i < m; ++i) xty[a] += preds[a][i] * y[i];
    }
    const std::vector<double> beta = solve_linear(xtx, xty);

    double sse = 0.0, sst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double fit = 0.0;
      for (std::size_t a = 0; a < p; ++a) fit += beta[a] * preds[a][i];
      sse += (y[i] - fit) * (y[i] - fit);
      sst += y[i] * y[i];
    }
    const double r2 = sst == 0.0 ? 0.0 : std::max(0.0, 1.0 - sse / sst);
    r[j] = std::max(std::sqrt(r2), 1e-6);
  }

  std::vector<double> inv(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    inv[j] = 1.0 / r[j];
    total += inv[j];
  }
  for (double& w : inv) w /= total;
  return inv;
}

}  // namespace qew::ref
