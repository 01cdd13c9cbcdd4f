#include "qew/transforms.hpp"

#include <algorithm>
#include <cstdint>

namespace qew {

NormalizedMatrix forward_normalize(const IndicatorMatrix& matrix) {
  matrix.validate();
  const std::size_t m = matrix.values.rows(), n = matrix.values.cols();
  const Matrix& x = matrix.values;

  std::vector<double> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = x(0, j);
    hi[j] = x(0, j);
    for (std::size_t i = 1; i < m; ++i) {
      lo[j] = std::min(lo[j], x(i, j));
      hi[j] = std::max(hi[j], x(i, j));
    }
  }

  NormalizedMatrix out;
  out.values = Matrix(m, n);
  out.source_directions = matrix.directions;
  Matrix& v = out.values;
#pragma omp parallel for if (m * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double range = hi[j] - lo[j];
      if (range == 0.0) {
        // constant column: uniform probabilities downstream, zero utility
        v(i, j) = 1.0;
      } else if (matrix.directions[j] == Direction::Min) {
        v(i, j) = std::clamp((hi[j] - x(i, j)) / range, 0.0, 1.0);
      } else {
        v(i, j) = std::clamp((x(i, j) - lo[j]) / range, 0.0, 1.0);
      }
    }
  }
  return out;
}

ProbabilityMatrix probability_matrix(const NormalizedMatrix& normalized) {
  const std::size_t m = normalized.values.rows(), n = normalized.values.cols();
  const Matrix& x = normalized.values;

  std::vector<double> colsum(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) colsum[j] += x(i, j);
    if (colsum[j] == 0.0)
      throw std::invalid_argument("all-zero column " + std::to_string(j) +
                                  " has no probability distribution");
  }

  ProbabilityMatrix out;
  out.values = Matrix(m, n);
  Matrix& p = out.values;
#pragma omp parallel for if (m * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = x(i, j) / colsum[j];
  return out;
}

ZMatrix vector_normalize(const Matrix& matrix) {
  const std::size_t m = matrix.rows(), n = matrix.cols();

  std::vector<double> norm(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) ss += matrix(i, j) * matrix(i, j);
    norm[j] = std::sqrt(ss);
  }

  ZMatrix out;
  out.values = Matrix(m, n);
  Matrix& z = out.values;
#pragma omp parallel for if (m * n >= kParallelCutoff)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i)
    for (std::size_t j = 0; j < n; ++j)
      z(i, j) = norm[j] == 0.0 ? 0.0 : matrix(i, j) / norm[j];
  return out;
}

}  // namespace qew
