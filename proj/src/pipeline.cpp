#include "qew/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

namespace qew {

namespace {

EvaluationResult topsis_stage(const IndicatorMatrix& matrix, const NormalizedMatrix& norm,
                              WeightVector weights, EntropyReport report, WeightMethod method) {
  const ZMatrix z = vector_normalize(norm);
  const ZMatrix zstar = weighted_matrix(z, weights);
  const IdealSchemes schemes = ideal_schemes(zstar);
  EvaluationResult out;
  out.method = method;
  out.score_table = closeness_scores(zstar, schemes, matrix.ids);
  out.weight_vector = std::move(weights);
  out.entropy_report = std::move(report);
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Partial Fisher-Yates; indices come back sorted so subset rows keep the
// original supplier order.
std::vector<std::size_t> draw_subset(std::size_t m, std::size_t size, std::uint64_t seed) {
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (m - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(size);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

EvaluationResult run_ew_topsis(const IndicatorMatrix& matrix) {
  matrix.validate();
  const NormalizedMatrix norm = forward_normalize(matrix);
  const ProbabilityMatrix P = probability_matrix(norm);
  auto [report, weights] = shannon_weights(P);
  return topsis_stage(matrix, norm, std::move(weights), std::move(report), WeightMethod::Shannon);
}

EvaluationResult run_q_ew_topsis(const IndicatorMatrix& matrix, const QModelConfig& config) {
  matrix.validate();
  config.grey.validate();
  config.solver.validate();

  const NormalizedMatrix norm = forward_normalize(matrix);
  const ProbabilityMatrix P = probability_matrix(norm);
  const std::size_t n = P.values.cols();

  std::optional<GreyRelationReport> grey;
  std::vector<double> q_values(n);
  double q_bar;
  if (config.forced_q) {
    q_bar = *config.forced_q;
    std::fill(q_values.begin(), q_values.end(), q_bar);
  } else {
    const EvaluationResult base = run_ew_topsis(matrix);
    std::vector<double> reference(base.score_table.scores.size());
    for (std::size_t i = 0; i < reference.size(); ++i)
      reference[i] = base.score_table.scores[i] / 100.0;  // back to the [0,1] ratio

    XiSweepResult sweep = xi_sweep(reference, norm, base.weight_vector, config.grey);

    // each indicator's GRA weight is the entropy target for its own q
#pragma omp parallel for if (n > 1)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j)
      q_values[j] = solve_q(P.values.column(j), sweep.report.weights.weights[j], config.solver);

    q_bar = average_q(q_values);
    grey = std::move(sweep.report);
  }

  auto [q_report, q_weights] =
      q_entropy_weights(P, q_bar, config.weight_mode, config.solver.normalized);
  q_report.q_values = q_values;
  q_report.q_mean = q_bar;

  EvaluationResult out =
      topsis_stage(matrix, norm, std::move(q_weights), std::move(q_report), WeightMethod::Tsallis);
  out.grey_report = std::move(grey);
  out.q_mean = q_bar;
  return out;
}

EvaluationResult evaluate_with_weights(const IndicatorMatrix& matrix, WeightVector weights,
                                       EntropyReport report) {
  matrix.validate();
  const WeightMethod method = weights.method;
  const NormalizedMatrix norm = forward_normalize(matrix);
  return topsis_stage(matrix, norm, std::move(weights), std::move(report), method);
}

ComparisonDiagnostics delta_proportions(const WeightVector& baseline, const WeightVector& corrected) {
  if (baseline.size() != corrected.size())
    throw std::invalid_argument("weight vectors differ in length");
  ComparisonDiagnostics diag;
  diag.delta_per_indicator.resize(corrected.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < corrected.size(); ++j) {
    if (!(corrected.weights[j] > 0.0))
      throw ComputationError("delta_proportions: corrected weight " + std::to_string(j) +
                             " is not positive");
    diag.delta_per_indicator[j] =
        std::abs(baseline.weights[j] - corrected.weights[j]) / corrected.weights[j];
    acc += diag.delta_per_indicator[j];
  }
  diag.delta_mean = acc / static_cast<double>(corrected.size());
  return diag;
}

std::pair<std::size_t, double> impact_rate(const ScoreTable& a, const ScoreTable& b) {
  if (a.ids.size() != b.ids.size()) throw std::invalid_argument("score tables differ in size");
  std::unordered_map<std::string, std::size_t> rank_b;
  rank_b.reserve(b.ids.size());
  for (std::size_t i = 0; i < b.ids.size(); ++i) rank_b[b.ids[i]] = b.rank[i];
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.ids.size(); ++i) {
    const auto it = rank_b.find(a.ids[i]);
    if (it == rank_b.end())
      throw std::invalid_argument("score tables have different id sets: '" + a.ids[i] + "'");
    if (it->second != a.rank[i]) ++count;
  }
  return {count, static_cast<double>(count) / static_cast<double>(a.ids.size())};
}

std::vector<MethodOutcome> compare_methods(const IndicatorMatrix& matrix,
                                           const QModelConfig& config) {
  matrix.validate();
  const std::vector<WeightMethod> order = {WeightMethod::Shannon, WeightMethod::Tsallis,
                                           WeightMethod::Cv, WeightMethod::Critic,
                                           WeightMethod::Iw};
  std::vector<MethodOutcome> outcomes;
  outcomes.reserve(order.size());
  for (WeightMethod method : order) {
    MethodOutcome outcome;
    outcome.method = method;
    try {
      switch (method) {
        case WeightMethod::Shannon:
          outcome.result = run_ew_topsis(matrix);
          break;
        case WeightMethod::Tsallis:
          outcome.result = run_q_ew_topsis(matrix, config);
          break;
        case WeightMethod::Cv:
          outcome.result = evaluate_with_weights(matrix, cv_weights(matrix));
          break;
        case WeightMethod::Critic:
          outcome.result = evaluate_with_weights(matrix, critic_weights(matrix));
          break;
        case WeightMethod::Iw:
          outcome.result = evaluate_with_weights(matrix, iw_weights(matrix));
          break;
        case WeightMethod::Gra:
          break;  // not a standalone scoring method here
      }
    } catch (const std::exception& e) {
      outcome.error = e.what();
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

RobustnessReport robustness_sweep(const RawSupplyData& data,
                                  const std::vector<std::size_t>& subset_sizes,
                                  std::uint64_t seed, const QModelConfig& config) {
  const std::size_t m = data.suppliers.size();
  if (subset_sizes.size() < 2)
    throw std::invalid_argument("robustness_sweep needs at least 2 iterations");
  for (std::size_t s : subset_sizes)
    if (s < 2 || s > m)
      throw std::invalid_argument("subset size " + std::to_string(s) + " outside [2, " +
                                  std::to_string(m) + "]");
  config.grey.validate();
  config.solver.validate();

  bool has_orders = true;
  for (const SupplierSeries& s : data.suppliers) has_orders = has_orders && s.order.has_value();

  const std::size_t iterations = subset_sizes.size();
  RobustnessReport report;
  report.iterations.resize(iterations);
  std::string first_error;

#pragma omp parallel for if (iterations > 1)
  for (std::int64_t it = 0; it < static_cast<std::int64_t>(iterations); ++it) {
    try {
      const std::vector<std::size_t> chosen =
          draw_subset(m, subset_sizes[it], mix_seed(seed, static_cast<std::uint64_t>(it)));
      RawSupplyData sub;
      sub.period_count = data.period_count;
      sub.suppliers.reserve(chosen.size());
      for (std::size_t i : chosen) sub.suppliers.push_back(data.suppliers[i]);

      const IndicatorMatrix indicators = derive_indicators(sub, has_orders);
      const EvaluationResult base = run_ew_topsis(indicators);
      const EvaluationResult qmodel = run_q_ew_topsis(indicators, config);

      RobustnessIteration& row = report.iterations[it];
      row.subset_size = subset_sizes[it];
      row.subset_ids = indicators.ids;
      row.w0 = base.weight_vector.weights;
      row.w1 = qmodel.weight_vector.weights;
    } catch (const std::exception& e) {
#pragma omp critical
      if (first_error.empty()) first_error = e.what();
    }
  }
  if (!first_error.empty()) throw ComputationError("robustness_sweep: " + first_error);

  const std::size_t n = report.iterations.front().w0.size();
  report.indicator_names = derive_indicators(data, has_orders).names;

  const auto mean_var = [&](auto pick) {
    std::pair<std::vector<double>, std::vector<double>> mv;
    mv.first.assign(n, 0.0);
    mv.second.assign(n, 0.0);
    for (const RobustnessIteration& row : report.iterations)
      for (std::size_t j = 0; j < n; ++j) mv.first[j] += pick(row)[j];
    for (double& v : mv.first) v /= static_cast<double>(iterations);
    for (const RobustnessIteration& row : report.iterations)
      for (std::size_t j = 0; j < n; ++j) {
        const double d = pick(row)[j] - mv.first[j];
        mv.second[j] += d * d;
      }
    for (double& v : mv.second) v /= static_cast<double>(iterations);
    return mv;
  };
  std::tie(report.w0_mean, report.w0_var) =
      mean_var([](const RobustnessIteration& r) -> const std::vector<double>& { return r.w0; });
  std::tie(report.w1_mean, report.w1_var) =
      mean_var([](const RobustnessIteration& r) -> const std::vector<double>& { return r.w1; });

  // relative error of each iteration against the cross-iteration mean weight
  for (RobustnessIteration& row : report.iterations) {
    row.rel_err0.resize(n);
    row.rel_err1.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      row.rel_err0[j] =
          report.w0_mean[j] == 0.0 ? 0.0 : (row.w0[j] - report.w0_mean[j]) / report.w0_mean[j];
      row.rel_err1[j] =
          report.w1_mean[j] == 0.0 ? 0.0 : (row.w1[j] - report.w1_mean[j]) / report.w1_mean[j];
    }
  }
  return report;
}

}  // namespace qew
