// Timing comparison of the parallel kernels in libqew against the serial
// reference implementations. Both sides compute identical values; the
// reference is the same code the test suite uses as its oracle.

#include "qew/pipeline.hpp"
#include "ref/reference.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qew;
using Clock = std::chrono::steady_clock;

namespace {

double rand01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

IndicatorMatrix synthetic(std::size_t m, std::size_t n) {
  std::mt19937_64 rng(2024);
  IndicatorMatrix matrix;
  matrix.values = Matrix(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) matrix.values(i, j) = 1000.0 * rand01(rng);
  for (std::size_t i = 0; i < m; ++i) matrix.ids.push_back("s" + std::to_string(i));
  for (std::size_t j = 0; j < n; ++j) {
    matrix.directions.push_back(j == 0 ? Direction::Min : Direction::Max);
    matrix.names.push_back("c" + std::to_string(j));
  }
  return matrix;
}

template <class F>
double time_ms(F&& body, int reps = 3) {
  double best = 1e18;
  for (int r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    body();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - start).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    const IndicatorMatrix matrix = synthetic(400000, 8);
    volatile double sink = 0.0;
    const double serial = time_ms([&] {
      const Matrix p = ref::probability(ref::range_normalize(matrix.values, matrix.directions));
      sink = ref::entropy_weights(p)[0];
    });
    const double parallel = time_ms([&] {
      const auto [report, w] = shannon_weights(probability_matrix(forward_normalize(matrix)));
      sink = w.weights[0];
    });
    row("normalize+entropy weights", serial, parallel);
  }

  {
    const IndicatorMatrix matrix = synthetic(400000, 8);
    volatile double sink = 0.0;
    const double serial = time_ms(
        [&] { sink = ref::ew_topsis_scores(matrix.values, matrix.directions)[0]; });
    const double parallel = time_ms([&] { sink = run_ew_topsis(matrix).score_table.scores[0]; });
    row("EW-TOPSIS end to end", serial, parallel);
  }

  {
    const std::size_t m = 400000, n = 8;
    const IndicatorMatrix matrix = synthetic(m, n);
    const NormalizedMatrix norm = forward_normalize(matrix);
    std::mt19937_64 rng(7);
    std::vector<double> reference(m);
    for (double& r : reference) r = rand01(rng);
    volatile double sink = 0.0;
    const double serial =
        time_ms([&] { sink = ref::gra_coefficients(reference, norm.values, 0.0013)(0, 0); });
    const double parallel =
        time_ms([&] { sink = relational_coefficients(reference, norm, 0.0013)(0, 0); });
    row("GRA coefficients", serial, parallel);
  }

  {
    const std::size_t m = 40000, n = 8;
    const IndicatorMatrix matrix = synthetic(m, n);
    const NormalizedMatrix norm = forward_normalize(matrix);
    std::mt19937_64 rng(8);
    std::vector<double> reference(m);
    for (double& r : reference) r = rand01(rng);
    WeightVector baseline;
    baseline.weights.assign(n, 1.0 / static_cast<double>(n));
    const GreyConfig config;  // 41 grid points
    volatile double sink = 0.0;
    const double serial = time_ms([&] {
      double best = 1e18, best_xi = 0.0;
      for (int k = 0; k <= 40; ++k) {
        const double xi = 0.001 + k * 0.0001;
        const std::vector<double> w = ref::normalize_to_sum_one(
            ref::gra_degrees(ref::gra_coefficients(reference, norm.values, xi)));
        double dist = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          dist += (w[j] - baseline.weights[j]) * (w[j] - baseline.weights[j]);
        if (std::sqrt(dist) < best) {
          best = std::sqrt(dist);
          best_xi = xi;
        }
      }
      sink = best_xi;
    }, 1);
    const double parallel =
        time_ms([&] { sink = xi_sweep(reference, norm, baseline, config).best_xi; }, 1);
    row("xi sweep (41 points)", serial, parallel);
  }

  {
    // per-column q solves; the parallel side fans columns out
    const std::size_t m = 5000, n = 64;
    std::mt19937_64 rng(9);
    ProbabilityMatrix P;
    P.values = Matrix(m, n);
    for (std::size_t j = 0; j < n; ++j) {
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        P.values(i, j) = rand01(rng) + 1e-9;
        total += P.values(i, j);
      }
      for (std::size_t i = 0; i < m; ++i) P.values(i, j) /= total;
    }
    std::vector<double> targets(n);
    for (double& t : targets) t = 0.9 + 0.1 * rand01(rng);
    volatile double sink = 0.0;
    const double serial = time_ms([&] {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += solve_q(P.values.column(j), targets[j]);
      sink = acc;
    }, 1);
    const double parallel = time_ms([&] {
      std::vector<double> qs(n);
#pragma omp parallel for
      for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j)
        qs[j] = solve_q(P.values.column(j), targets[j]);
      double acc = 0.0;
      for (double q : qs) acc += q;
      sink = acc;
    }, 1);
    row("q solve per column", serial, parallel);
  }

  return 0;
}
