#include "qew/topsis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace qew {

ZMatrix weighted_matrix(const ZMatrix& z, const WeightVector& w) {
  const std::size_t m = z.values.rows(), n = z.values.cols();
  if (w.size() != n)
    throw std::invalid_argument("weight vector length " + std::to_string(w.size()) +
                                " does not match " + std::to_string(n) + " columns");
  ZMatrix out;
  out.values = Matrix(m, n);
  Matrix& v = out.values;
#pragma omp parallel for if (m * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i)
    for (std::size_t j = 0; j < n; ++j) v(i, j) = z.values(i, j) * w.weights[j];
  return out;
}

IdealSchemes ideal_schemes(const ZMatrix& zstar) {
  const std::size_t m = zstar.values.rows(), n = zstar.values.cols();
  if (m == 0) throw std::invalid_argument("ideal_schemes needs at least one row");
  IdealSchemes s;
  s.best.resize(n);
  s.worst.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double hi = zstar.values(0, j), lo = zstar.values(0, j);
    for (std::size_t i = 1; i < m; ++i) {
      hi = std::max(hi, zstar.values(i, j));
      lo = std::min(lo, zstar.values(i, j));
    }
    s.best[j] = hi;
    s.worst[j] = lo;
  }
  return s;
}

ScoreTable closeness_scores(const ZMatrix& zstar, const IdealSchemes& schemes,
                            std::vector<std::string> ids) {
  const std::size_t m = zstar.values.rows(), n = zstar.values.cols();
  if (schemes.best.size() != n || schemes.worst.size() != n)
    throw std::invalid_argument("scheme length does not match column count");
  if (ids.size() != m) throw std::invalid_argument("id count does not match row count");

  ScoreTable table;
  table.ids = std::move(ids);
  table.d_plus.resize(m);
  table.d_minus.resize(m);
  table.scores.resize(m);
#pragma omp parallel for if (m * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i) {
    double dp = 0.0, dm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double to_best = schemes.best[j] - zstar.values(i, j);
      const double to_worst = schemes.worst[j] - zstar.values(i, j);
      dp += to_best * to_best;
      dm += to_worst * to_worst;
    }
    table.d_plus[i] = std::sqrt(dp);
    table.d_minus[i] = std::sqrt(dm);
    const double denom = table.d_plus[i] + table.d_minus[i];
    // best == worst in every column: no discrimination, park at the midpoint
    table.scores[i] = denom == 0.0 ? 50.0 : 100.0 * (table.d_minus[i] / denom);
  }
  rank(table);
  return table;
}

void rank(ScoreTable& table) {
  const std::size_t m = table.scores.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (table.scores[a] != table.scores[b]) return table.scores[a] > table.scores[b];
    return table.ids[a] < table.ids[b];
  });
  table.rank.assign(m, 0);
  for (std::size_t pos = 0; pos < m; ++pos) table.rank[order[pos]] = pos + 1;
}

}  // namespace qew
