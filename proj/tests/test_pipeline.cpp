#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qew/pipeline.hpp"
#include "ref/reference.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace qew;

namespace {

IndicatorMatrix identical_column_matrix(std::size_t m, std::size_t n) {
  IndicatorMatrix matrix;
  matrix.ids = testutil::make_ids(m);
  matrix.values = Matrix(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) matrix.values(i, j) = static_cast<double>(i + 1);
  matrix.directions.assign(n, Direction::Max);
  for (std::size_t j = 0; j < n; ++j) matrix.names.push_back("c" + std::to_string(j));
  return matrix;
}

RawSupplyData random_supply(std::mt19937_64& rng, std::size_t m, std::size_t periods,
                            bool with_orders) {
  RawSupplyData data;
  data.period_count = periods;
  for (std::size_t s = 0; s < m; ++s) {
    SupplierSeries series;
    series.id = testutil::make_ids(m)[s];
    for (std::size_t t = 0; t < periods; ++t)
      series.supply.push_back(rng() % 5 == 0 ? 0.0 : testutil::rand_in(rng, 1, 200));
    if (with_orders) {
      std::vector<double> order;
      for (std::size_t t = 0; t < periods; ++t) order.push_back(testutil::rand_in(rng, 1, 200));
      series.order = order;
    }
    data.suppliers.push_back(series);
  }
  return data;
}

}  // namespace

TEST_CASE("run_ew_topsis ranks a dominating supplier first") {
  IndicatorMatrix matrix;
  matrix.ids = {"low", "high"};
  matrix.values = Matrix(2, 3);
  // high wins both max columns and the min column
  matrix.values(0, 0) = 9;  matrix.values(0, 1) = 1;  matrix.values(0, 2) = 2;
  matrix.values(1, 0) = 1;  matrix.values(1, 1) = 8;  matrix.values(1, 2) = 7;
  matrix.directions = {Direction::Min, Direction::Max, Direction::Max};
  matrix.names = {"a", "b", "c"};
  const EvaluationResult result = run_ew_topsis(matrix);
  CHECK(result.method == WeightMethod::Shannon);
  CHECK(result.score_table.rank == std::vector<std::size_t>{2, 1});
  CHECK(result.score_table.scores[1] == 100.0);
  CHECK(result.score_table.scores[0] == 0.0);
}

TEST_CASE("run_ew_topsis on identical suppliers parks everyone at 50") {
  IndicatorMatrix matrix = identical_column_matrix(4, 3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) matrix.values(i, j) = 7.0;
  const EvaluationResult result = run_ew_topsis(matrix);
  for (double s : result.score_table.scores) CHECK(s == 50.0);
  CHECK(result.score_table.rank == std::vector<std::size_t>{1, 2, 3, 4});
}

TEST_CASE("run_ew_topsis equals the serial reference chain") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const IndicatorMatrix matrix = testutil::random_indicators(rng, 5, 4);
    const EvaluationResult result = run_ew_topsis(matrix);
    const std::vector<double> expected = ref::ew_topsis_scores(matrix.values, matrix.directions);
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(result.score_table.scores[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("run_q_ew_topsis on a single indicator gives weight 1 in both models") {
  std::mt19937_64 rng(72);
  const IndicatorMatrix matrix = testutil::random_indicators(rng, 8, 1);
  const EvaluationResult base = run_ew_topsis(matrix);
  const EvaluationResult qres = run_q_ew_topsis(matrix);
  CHECK(base.weight_vector.weights == std::vector<double>{1.0});
  CHECK(qres.weight_vector.weights == std::vector<double>{1.0});
  CHECK(base.score_table.rank == qres.score_table.rank);
  CHECK(qres.q_mean.has_value());
  CHECK(qres.grey_report.has_value());
}

TEST_CASE("run_q_ew_topsis matches the hand-chained oracle") {
  std::mt19937_64 rng(73);
  const IndicatorMatrix matrix = testutil::random_indicators(rng, 6, 4);
  const QModelConfig config;
  const EvaluationResult qres = run_q_ew_topsis(matrix, config);

  // oracle side, step by step with the serial reference
  const Matrix norm = ref::range_normalize(matrix.values, matrix.directions);
  const Matrix prob = ref::probability(norm);
  const std::vector<double> base_w = ref::entropy_weights(prob);
  const std::vector<double> base_scores = ref::ew_topsis_scores(matrix.values, matrix.directions);

  std::vector<double> reference(6);
  for (std::size_t i = 0; i < 6; ++i) reference[i] = base_scores[i] / 100.0;

  double best_xi = 0.0, best_dist = 1e18;
  for (int k = 0; k <= 40; ++k) {
    const double xi = 0.001 + k * 0.0001;
    const std::vector<double> w =
        ref::normalize_to_sum_one(ref::gra_degrees(ref::gra_coefficients(reference, norm, xi)));
    double dist = 0.0;
    for (std::size_t j = 0; j < 4; ++j) dist += std::pow(w[j] - base_w[j], 2);
    if (std::sqrt(dist) < best_dist) {
      best_dist = std::sqrt(dist);
      best_xi = xi;
    }
  }
  REQUIRE(qres.grey_report.has_value());
  CHECK(qres.grey_report->xi_used == doctest::Approx(best_xi).epsilon(1e-9));

  const std::vector<double> gra_w = ref::normalize_to_sum_one(
      ref::gra_degrees(ref::gra_coefficients(reference, norm, qres.grey_report->xi_used)));

  // solved q values satisfy the constraint wherever a root was found
  REQUIRE(qres.entropy_report.q_values.size() == 4);
  for (std::size_t j = 0; j < 4; ++j) {
    const double qj = qres.entropy_report.q_values[j];
    if (qj != 1.0)
      CHECK(std::abs(ref::tsallis_normalized(prob.column(j), qj) - gra_w[j]) < 1e-8);
  }
  const double q_bar = ref::sum(qres.entropy_report.q_values) / 4.0;
  CHECK(*qres.q_mean == doctest::Approx(q_bar).epsilon(1e-12));

  // q-entropy weights at the averaged q, then the reference TOPSIS stage
  std::vector<double> ent(4);
  for (std::size_t j = 0; j < 4; ++j) ent[j] = ref::tsallis_normalized(prob.column(j), q_bar);
  const std::vector<double> qw = ref::normalize_to_sum_one(ent);
  for (std::size_t j = 0; j < 4; ++j)
    CHECK(qres.weight_vector.weights[j] == doctest::Approx(qw[j]).epsilon(1e-10));

  const std::vector<double> expected =
      ref::topsis_scores_with_weights(matrix.values, matrix.directions, qw);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(qres.score_table.scores[i] == doctest::Approx(expected[i]).epsilon(1e-9));
}

TEST_CASE("forced q = 1 with utility weighting reproduces the classical model exactly") {
  std::mt19937_64 rng(74);
  const IndicatorMatrix matrix = testutil::random_indicators(rng, 9, 4);
  QModelConfig config;
  config.forced_q = 1.0;
  config.weight_mode = QWeightMode::Utility;
  const EvaluationResult qres = run_q_ew_topsis(matrix, config);
  const EvaluationResult base = run_ew_topsis(matrix);
  CHECK(qres.weight_vector.weights == base.weight_vector.weights);
  CHECK(qres.score_table.scores == base.score_table.scores);
  CHECK(qres.score_table.rank == base.score_table.rank);
}

TEST_CASE("delta_proportions") {
  WeightVector a, b;
  a.weights = {0.6, 0.4};
  b.weights = {0.5, 0.5};
  const ComparisonDiagnostics diag = delta_proportions(a, b);
  CHECK(diag.delta_per_indicator[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(diag.delta_per_indicator[1] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(diag.delta_mean == doctest::Approx(0.2).epsilon(1e-12));

  const ComparisonDiagnostics same = delta_proportions(a, a);
  for (double d : same.delta_per_indicator) CHECK(d == 0.0);
  CHECK(same.delta_mean == 0.0);

  WeightVector zero;
  zero.weights = {1.0, 0.0};
  CHECK_THROWS_AS(delta_proportions(a, zero), ComputationError);
  WeightVector short_w;
  short_w.weights = {1.0};
  CHECK_THROWS_AS(delta_proportions(a, short_w), std::invalid_argument);
}

TEST_CASE("impact_rate counts rank changes") {
  ScoreTable a, b;
  a.ids = {"w", "x", "y", "z"};
  a.scores = {40, 30, 20, 10};
  a.d_plus = a.d_minus = {0, 0, 0, 0};
  rank(a);
  b = a;
  b.scores = {30, 40, 20, 10};  // swap the top two
  rank(b);

  CHECK(impact_rate(a, a) == std::pair<std::size_t, double>{0, 0.0});
  const auto [count, rate] = impact_rate(a, b);
  CHECK(count == 2);
  CHECK(rate == 0.5);
  // symmetry
  CHECK(impact_rate(b, a) == impact_rate(a, b));

  ScoreTable other = a;
  other.ids = {"w", "x", "y", "q"};
  CHECK_THROWS_AS(impact_rate(a, other), std::invalid_argument);
}

TEST_CASE("compare_methods isolates per-method failures") {
  std::mt19937_64 rng(75);
  const IndicatorMatrix one_col = testutil::random_indicators(rng, 6, 1);
  const std::vector<MethodOutcome> outcomes = compare_methods(one_col);
  REQUIRE(outcomes.size() == 5);
  CHECK(outcomes[0].method == WeightMethod::Shannon);
  CHECK(outcomes[1].method == WeightMethod::Tsallis);
  CHECK(outcomes[2].method == WeightMethod::Cv);
  CHECK(outcomes[3].method == WeightMethod::Critic);
  CHECK(outcomes[4].method == WeightMethod::Iw);
  CHECK(outcomes[0].result.has_value());
  CHECK(outcomes[1].result.has_value());
  CHECK(outcomes[2].result.has_value());
  CHECK_FALSE(outcomes[3].result.has_value());
  CHECK_FALSE(outcomes[4].result.has_value());
  CHECK_FALSE(outcomes[3].error.empty());
  CHECK_FALSE(outcomes[4].error.empty());
}

TEST_CASE("compare_methods on identical columns agrees across methods") {
  const IndicatorMatrix matrix = identical_column_matrix(7, 4);
  const std::vector<MethodOutcome> outcomes = compare_methods(matrix);
  REQUIRE(outcomes.size() == 5);
  for (const MethodOutcome& outcome : outcomes) {
    REQUIRE(outcome.result.has_value());
    for (double w : outcome.result->weight_vector.weights)
      CHECK(w == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(outcome.result->score_table.rank == outcomes[0].result->score_table.rank);
  }
}

TEST_CASE("compare_methods matches each per-method oracle chain") {
  std::mt19937_64 rng(76);
  const IndicatorMatrix matrix = testutil::random_indicators(rng, 10, 4);
  const std::vector<MethodOutcome> outcomes = compare_methods(matrix);
  REQUIRE(outcomes.size() == 5);
  for (const MethodOutcome& outcome : outcomes) REQUIRE(outcome.result.has_value());

  const Matrix& x = matrix.values;
  const std::vector<Direction>& dirs = matrix.directions;
  const std::vector<double> ew = ref::ew_topsis_scores(x, dirs);
  const std::vector<double> cv =
      ref::topsis_scores_with_weights(x, dirs, ref::cv_weights(x, dirs));
  const std::vector<double> critic =
      ref::topsis_scores_with_weights(x, dirs, ref::critic_weights(x, dirs));
  const std::vector<double> iw =
      ref::topsis_scores_with_weights(x, dirs, ref::iw_weights(x, dirs));
  const std::vector<double> qew =
      ref::topsis_scores_with_weights(x, dirs, outcomes[1].result->weight_vector.weights);

  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(outcomes[0].result->score_table.scores[i] == doctest::Approx(ew[i]).epsilon(1e-10));
    CHECK(outcomes[1].result->score_table.scores[i] == doctest::Approx(qew[i]).epsilon(1e-10));
    CHECK(outcomes[2].result->score_table.scores[i] == doctest::Approx(cv[i]).epsilon(1e-10));
    CHECK(outcomes[3].result->score_table.scores[i] == doctest::Approx(critic[i]).epsilon(1e-10));
    CHECK(outcomes[4].result->score_table.scores[i] == doctest::Approx(iw[i]).epsilon(1e-10));
  }
}

TEST_CASE("robustness_sweep: full-data iterations have zero variance") {
  std::mt19937_64 rng(77);
  const RawSupplyData data = random_supply(rng, 9, 8, true);
  const RobustnessReport report = robustness_sweep(data, {9, 9}, 123);
  REQUIRE(report.iterations.size() == 2);
  CHECK(report.iterations[0].w0 == report.iterations[1].w0);
  CHECK(report.iterations[0].w1 == report.iterations[1].w1);
  for (double v : report.w0_var) CHECK(v == 0.0);
  for (double v : report.w1_var) CHECK(v == 0.0);
  for (const RobustnessIteration& it : report.iterations) {
    for (double e : it.rel_err0) CHECK(e == 0.0);
    for (double e : it.rel_err1) CHECK(e == 0.0);
  }
}

TEST_CASE("robustness_sweep aggregates match direct arithmetic on the drawn subsets") {
  std::mt19937_64 rng(78);
  const RawSupplyData data = random_supply(rng, 12, 10, true);
  const RobustnessReport report = robustness_sweep(data, {6, 9, 12}, 42);
  REQUIRE(report.iterations.size() == 3);
  const std::size_t n = report.indicator_names.size();
  REQUIRE(n == 4);

  for (const RobustnessIteration& it : report.iterations) {
    CHECK(it.subset_ids.size() == it.subset_size);
    // rebuild the subset and recompute the baseline weights with the oracle
    RawSupplyData sub;
    sub.period_count = data.period_count;
    for (const SupplierSeries& s : data.suppliers)
      if (std::find(it.subset_ids.begin(), it.subset_ids.end(), s.id) != it.subset_ids.end())
        sub.suppliers.push_back(s);
    REQUIRE(sub.suppliers.size() == it.subset_size);
    const IndicatorMatrix indicators = derive_indicators(sub);
    const std::vector<double> w0 = ref::entropy_weights(
        ref::probability(ref::range_normalize(indicators.values, indicators.directions)));
    for (std::size_t j = 0; j < n; ++j)
      CHECK(it.w0[j] == doctest::Approx(w0[j]).epsilon(1e-10));
  }

  // means, variances and relative errors are plain arithmetic over iterations
  for (std::size_t j = 0; j < n; ++j) {
    double mean = 0.0;
    for (const RobustnessIteration& it : report.iterations) mean += it.w0[j];
    mean /= 3.0;
    double var = 0.0;
    for (const RobustnessIteration& it : report.iterations)
      var += (it.w0[j] - mean) * (it.w0[j] - mean);
    var /= 3.0;
    CHECK(report.w0_mean[j] == doctest::Approx(mean).epsilon(1e-12));
    CHECK(report.w0_var[j] == doctest::Approx(var).epsilon(1e-12));
    for (const RobustnessIteration& it : report.iterations) {
      const double expected = mean == 0.0 ? 0.0 : (it.w0[j] - mean) / mean;
      CHECK(it.rel_err0[j] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("robustness_sweep is reproducible for a fixed seed") {
  std::mt19937_64 rng(79);
  const RawSupplyData data = random_supply(rng, 10, 6, false);
  const std::vector<std::size_t> sizes = {4, 7, 10};
  const RobustnessReport a = robustness_sweep(data, sizes, 2024);
  const RobustnessReport b = robustness_sweep(data, sizes, 2024);
  REQUIRE(a.iterations.size() == b.iterations.size());
  for (std::size_t it = 0; it < a.iterations.size(); ++it) {
    CHECK(a.iterations[it].subset_ids == b.iterations[it].subset_ids);
    CHECK(a.iterations[it].w0 == b.iterations[it].w0);
    CHECK(a.iterations[it].w1 == b.iterations[it].w1);
  }
  CHECK(a.w0_mean == b.w0_mean);
  CHECK(a.w1_var == b.w1_var);
}

TEST_CASE("q drifts back to 1 as the sample grows") {
  // heavy-tailed columns: small samples leave room for a non-classical q,
  // large samples push every column's entropy toward 1 and the solver to its
  // classical anchor
  const auto skewed = [](std::size_t m) {
    std::mt19937_64 rng(555);
    IndicatorMatrix mat;
    mat.values = Matrix(m, 4);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        mat.values(i, j) = std::pow(testutil::rand01(rng), 8) * 1000.0;
    mat.ids = testutil::make_ids(m);
    mat.directions.assign(4, Direction::Max);
    mat.names = {"a", "b", "c", "d"};
    return mat;
  };
  const EvaluationResult small = run_q_ew_topsis(skewed(10));
  const EvaluationResult large = run_q_ew_topsis(skewed(1500));
  CHECK(*small.q_mean != 1.0);
  CHECK(*large.q_mean == 1.0);
  CHECK(std::abs(*large.q_mean - 1.0) < std::abs(*small.q_mean - 1.0));
}

TEST_CASE("robustness_sweep validates its inputs") {
  std::mt19937_64 rng(80);
  const RawSupplyData data = random_supply(rng, 5, 4, false);
  CHECK_THROWS_AS(robustness_sweep(data, {5}, 1), std::invalid_argument);       // one iteration
  CHECK_THROWS_AS(robustness_sweep(data, {1, 5}, 1), std::invalid_argument);    // too small
  CHECK_THROWS_AS(robustness_sweep(data, {5, 6}, 1), std::invalid_argument);    // beyond m
}
