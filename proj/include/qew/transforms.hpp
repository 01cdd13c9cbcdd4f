#pragma once

#include "qew/dataset.hpp"

namespace qew {

// Range-normalized matrix: every entry in [0,1], each non-degenerate column
// touching both 0 and 1. Min-type columns are sense-inverted, so larger is
// better everywhere downstream.
struct NormalizedMatrix {
  Matrix values;
  std::vector<Direction> source_directions;
};

// Column-stochastic matrix: each column sums to 1 (checked at 1e-12).
struct ProbabilityMatrix {
  Matrix values;
};

// Columns scaled to unit L2 norm (all-zero columns stay all-zero).
struct ZMatrix {
  Matrix values;
};

NormalizedMatrix forward_normalize(const IndicatorMatrix& matrix);
ProbabilityMatrix probability_matrix(const NormalizedMatrix& normalized);

ZMatrix vector_normalize(const Matrix& matrix);
inline ZMatrix vector_normalize(const NormalizedMatrix& m) { return vector_normalize(m.values); }
inline ZMatrix vector_normalize(const IndicatorMatrix& m) { return vector_normalize(m.values); }

}  // namespace qew
