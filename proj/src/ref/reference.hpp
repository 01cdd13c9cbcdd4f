#pragma once

// Straight-line serial implementations of every formula in the evaluation
// chain. Tests use these as the independent oracle for the parallel kernels
// in libqew, and the benchmark uses them as the single-thread baseline.
// Nothing in libqew may include this header.

#include "qew/core.hpp"

#include <cstddef>
#include <vector>

namespace qew::ref {

double population_variance(const std::vector<double>& xs);
double sum(const std::vector<double>& xs);
std::size_t count_positive(const std::vector<double>& xs);

Matrix range_normalize(const Matrix& x, const std::vector<Direction>& directions);
Matrix probability(const Matrix& xprime);
Matrix l2_normalize(const Matrix& x);

std::vector<double> shannon_entropies(const Matrix& p);         // normalized by ln m
std::vector<double> entropy_weights(const Matrix& p);           // utility-proportional

double tsallis_raw(const std::vector<double>& p, double q);
double tsallis_normalized(const std::vector<double>& p, double q);

// Full chain: range normalize, probabilities, entropy weights, L2 normalize,
// weight, ideal/anti-ideal, Euclidean distances, 100 * D- / (D+ + D-).
std::vector<double> ew_topsis_scores(const Matrix& x, const std::vector<Direction>& directions);
// Same chain with caller-supplied weights instead of the entropy weighting.
std::vector<double> topsis_scores_with_weights(const Matrix& x,
                                               const std::vector<Direction>& directions,
                                               const std::vector<double>& weights);

Matrix gra_coefficients(const std::vector<double>& reference, const Matrix& comparison, double xi);
std::vector<double> gra_degrees(const Matrix& coefficients);
std::vector<double> normalize_to_sum_one(const std::vector<double>& xs);

std::vector<double> cv_weights(const Matrix& x, const std::vector<Direction>& directions);
std::vector<double> critic_weights(const Matrix& x, const std::vector<Direction>& directions);
// Multiple correlation per column via explicit least-squares normal equations.
std::vector<double> iw_weights(const Matrix& x, const std::vector<Direction>& directions);

}  // namespace qew::ref
