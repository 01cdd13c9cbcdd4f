#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qew/transforms.hpp"
#include "ref/reference.hpp"
#include "test_util.hpp"

using namespace qew;

namespace {

IndicatorMatrix column_matrix(std::vector<double> values, Direction dir) {
  IndicatorMatrix m;
  m.values = Matrix(values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m.values(i, 0) = values[i];
  m.ids = testutil::make_ids(values.size());
  m.directions = {dir};
  m.names = {"c1"};
  return m;
}

}  // namespace

TEST_CASE("forward_normalize maps range endpoints") {
  const NormalizedMatrix max_col = forward_normalize(column_matrix({0, 5, 10}, Direction::Max));
  CHECK(max_col.values(0, 0) == 0.0);
  CHECK(max_col.values(1, 0) == 0.5);
  CHECK(max_col.values(2, 0) == 1.0);

  const NormalizedMatrix min_col = forward_normalize(column_matrix({0, 5, 10}, Direction::Min));
  CHECK(min_col.values(0, 0) == 1.0);
  CHECK(min_col.values(1, 0) == 0.5);
  CHECK(min_col.values(2, 0) == 0.0);

  const NormalizedMatrix constant = forward_normalize(column_matrix({7, 7, 7}, Direction::Max));
  for (std::size_t i = 0; i < 3; ++i) CHECK(constant.values(i, 0) == 1.0);
}

TEST_CASE("forward_normalize touches 0 and 1 in every non-degenerate column") {
  std::mt19937_64 rng(21);
  const IndicatorMatrix matrix = testutil::random_indicators(rng, 12, 5);
  const NormalizedMatrix norm = forward_normalize(matrix);
  for (std::size_t j = 0; j < 5; ++j) {
    double lo = 1e9, hi = -1e9;
    for (std::size_t i = 0; i < 12; ++i) {
      CHECK(norm.values(i, j) >= 0.0);
      CHECK(norm.values(i, j) <= 1.0);
      lo = std::min(lo, norm.values(i, j));
      hi = std::max(hi, norm.values(i, j));
    }
    CHECK(lo == 0.0);
    CHECK(hi == 1.0);
  }
}

TEST_CASE("forward_normalize is idempotent after retagging as Max") {
  std::mt19937_64 rng(22);
  const IndicatorMatrix matrix = testutil::random_indicators(rng, 9, 4);
  const NormalizedMatrix once = forward_normalize(matrix);

  IndicatorMatrix retagged;
  retagged.values = once.values;
  retagged.ids = matrix.ids;
  retagged.names = matrix.names;
  retagged.directions.assign(4, Direction::Max);
  const NormalizedMatrix twice = forward_normalize(retagged);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(twice.values(i, j) == doctest::Approx(once.values(i, j)).epsilon(1e-12));
}

TEST_CASE("forward_normalize is invariant under positive affine column maps") {
  std::mt19937_64 rng(23);
  IndicatorMatrix matrix = testutil::random_indicators(rng, 10, 3);
  const NormalizedMatrix base = forward_normalize(matrix);

  IndicatorMatrix shifted = matrix;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 3; ++j) shifted.values(i, j) = 2.5 * matrix.values(i, j) + 17.0;
  const NormalizedMatrix transformed = forward_normalize(shifted);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(transformed.values(i, j) == doctest::Approx(base.values(i, j)).epsilon(1e-9));
}

TEST_CASE("probability_matrix divides by column sums") {
  NormalizedMatrix norm;
  norm.values = Matrix(4, 1, 1.0);
  const ProbabilityMatrix uniform = probability_matrix(norm);
  for (std::size_t i = 0; i < 4; ++i) CHECK(uniform.values(i, 0) == 0.25);

  NormalizedMatrix ramp;
  ramp.values = Matrix(3, 1);
  ramp.values(0, 0) = 0.0;
  ramp.values(1, 0) = 0.5;
  ramp.values(2, 0) = 1.0;
  const ProbabilityMatrix p = probability_matrix(ramp);
  CHECK(p.values(0, 0) == 0.0);
  CHECK(p.values(1, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(p.values(2, 0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("probability_matrix columns sum to one") {
  std::mt19937_64 rng(24);
  NormalizedMatrix norm;
  norm.values = testutil::random_matrix(rng, 6, 2, 0.0, 1.0);
  const ProbabilityMatrix p = probability_matrix(norm);
  for (std::size_t j = 0; j < 2; ++j) {
    double colsum = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
      colsum += p.values(i, j);
      CHECK(p.values(i, j) >= 0.0);
      CHECK(p.values(i, j) <= 1.0);
    }
    CHECK(std::abs(colsum - 1.0) < 1e-12);
  }
}

TEST_CASE("probability_matrix rejects an all-zero column") {
  NormalizedMatrix zero;
  zero.values = Matrix(3, 1, 0.0);
  CHECK_THROWS_AS(probability_matrix(zero), std::invalid_argument);
}

TEST_CASE("probability_matrix is scale invariant per column") {
  std::mt19937_64 rng(25);
  NormalizedMatrix norm;
  norm.values = testutil::random_matrix(rng, 5, 1, 0.1, 1.0);
  NormalizedMatrix scaled = norm;
  for (std::size_t i = 0; i < 5; ++i) scaled.values(i, 0) *= 42.0;
  const ProbabilityMatrix a = probability_matrix(norm);
  const ProbabilityMatrix b = probability_matrix(scaled);
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(a.values(i, 0) == doctest::Approx(b.values(i, 0)).epsilon(1e-12));
}

TEST_CASE("vector_normalize gives unit columns") {
  Matrix x(2, 1);
  x(0, 0) = 3;
  x(1, 0) = 4;
  const ZMatrix z = vector_normalize(x);
  CHECK(z.values(0, 0) == doctest::Approx(0.6));
  CHECK(z.values(1, 0) == doctest::Approx(0.8));

  Matrix unit(2, 1);
  unit(0, 0) = 1;
  unit(1, 0) = 0;
  const ZMatrix zu = vector_normalize(unit);
  CHECK(zu.values(0, 0) == 1.0);
  CHECK(zu.values(1, 0) == 0.0);
}

TEST_CASE("vector_normalize column norms are 1, zero columns stay zero") {
  std::mt19937_64 rng(26);
  Matrix x = testutil::random_matrix(rng, 5, 3);
  const ZMatrix z = vector_normalize(x);
  for (std::size_t j = 0; j < 3; ++j) {
    double ss = 0.0;
    for (std::size_t i = 0; i < 5; ++i) ss += z.values(i, j) * z.values(i, j);
    CHECK(std::abs(std::sqrt(ss) - 1.0) < 1e-12);
  }

  Matrix zero(4, 2, 0.0);
  const ZMatrix zz = vector_normalize(zero);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(zz.values(i, j) == 0.0);
}

TEST_CASE("vector_normalize is invariant under positive column scaling") {
  std::mt19937_64 rng(27);
  Matrix x = testutil::random_matrix(rng, 6, 2);
  Matrix scaled = x;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 2; ++j) scaled(i, j) *= 7.25;
  const ZMatrix a = vector_normalize(x);
  const ZMatrix b = vector_normalize(scaled);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(a.values(i, j) == doctest::Approx(b.values(i, j)).epsilon(1e-12));
}

TEST_CASE("transforms agree with the serial reference") {
  std::mt19937_64 rng(28);
  const IndicatorMatrix matrix = testutil::random_indicators(rng, 40, 6);
  const NormalizedMatrix norm = forward_normalize(matrix);
  const Matrix ref_norm = ref::range_normalize(matrix.values, matrix.directions);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      CHECK(norm.values(i, j) == doctest::Approx(ref_norm(i, j)).epsilon(1e-14));

  const ProbabilityMatrix p = probability_matrix(norm);
  const Matrix ref_p = ref::probability(ref_norm);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      CHECK(p.values(i, j) == doctest::Approx(ref_p(i, j)).epsilon(1e-14));

  const ZMatrix z = vector_normalize(norm);
  const Matrix ref_z = ref::l2_normalize(ref_norm);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      CHECK(z.values(i, j) == doctest::Approx(ref_z(i, j)).epsilon(1e-14));
}
