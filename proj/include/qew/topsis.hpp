#pragma once

#include "qew/weighting.hpp"

namespace qew {

// Columnwise max (best) and min (worst) of the weighted decision matrix.
struct IdealSchemes {
  std::vector<double> best;
  std::vector<double> worst;
};

// Per-subject closeness results. scores are on the 0..100 reporting scale;
// rank[i] is the 1-based position of subject i under descending score with
// ties broken by ascending id.
struct ScoreTable {
  std::vector<std::string> ids;
  std::vector<double> d_plus;
  std::vector<double> d_minus;
  std::vector<double> scores;
  std::vector<std::size_t> rank;
};

ZMatrix weighted_matrix(const ZMatrix& z, const WeightVector& w);
IdealSchemes ideal_schemes(const ZMatrix& zstar);
ScoreTable closeness_scores(const ZMatrix& zstar, const IdealSchemes& schemes,
                            std::vector<std::string> ids);
// Recomputes the rank permutation from scores and ids; idempotent.
void rank(ScoreTable& table);

}  // namespace qew
