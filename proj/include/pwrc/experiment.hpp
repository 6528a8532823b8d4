#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "pwrc/baseline.hpp"
#include "pwrc/execution.hpp"
#include "pwrc/io.hpp"
#include "pwrc/synthetic.hpp"
#include "pwrc/transform.hpp"

namespace pwrc {

// Zero-based signal indices {0} U {round(i N / (p - 1)) - 1 : i = 1..p-1}: the
// first signal followed by p - 1 evenly strided ones ending at the last.
std::vector<std::size_t> knots_for_count(std::size_t signal_count, std::size_t p);

// Zero-based indices {0} U {s i - 1 : s i <= N}, plus the last signal when the
// stride does not land on it.
std::vector<std::size_t> knots_for_stride(std::size_t signal_count, std::size_t stride);

std::vector<InterpolationPair> make_pairs(const EnsembleDataset& data,
                                          std::span<const std::size_t> indices);

// Signals whose index is not listed in excluded.
std::vector<Signal> held_out(const EnsembleDataset& data, std::span<const std::size_t> excluded);

struct KnotCheck {
  std::size_t interval = 0;
  double t = 0.0;  // far knot of the interval
  double predicted = 0.0;
  std::optional<double> empirical;  // present when the dataset has a signal at t
};

struct EvalReport {
  std::vector<std::size_t> signal;  // zero-based dataset index
  std::vector<double> t;
  std::vector<std::size_t> interval;
  std::vector<double> error;
  double eps_min = 0.0;
  double eps_max = 0.0;
  std::vector<KnotCheck> knots;
};

// eps_k for every dataset signal inside the model's time domain, plus the
// closed-form and measured knot error of every interval.
EvalReport evaluate(const PiecewiseTransform& F, const EnsembleDataset& data,
                    Execution exec = Execution::kParallel);

struct BenchConfig {
  SyntheticSpec data;
  std::vector<std::size_t> knot_counts{3, 5, 9, 17};
  std::vector<std::size_t> ranks{2, 4};
  Factorization factorization = Factorization::kOrthonormalDecoder;
  Execution execution = Execution::kParallel;
};

struct BenchCell {
  std::size_t p = 0;
  std::size_t rank = 0;
  CompressionRatio ratio;
  double eps_min = 0.0;
  double eps_max = 0.0;
  double delta_min = 0.0;          // individual KLTs
  double delta_max = 0.0;
  double generic_delta_min = 0.0;  // one pooled KLT
  double generic_delta_max = 0.0;
  double beats_generic = 0.0;      // fraction of test signals with eps(F) <= eps(generic)
  double fit_seconds = 0.0;
};

struct BenchReport {
  std::size_t test_signals = 0;
  std::vector<BenchCell> cells;
};

// Runs the (p, rank) grid on one synthetic ensemble. Every cell is scored on
// the same test set: the signals that are a knot for none of the p values.
BenchReport run_bench(const BenchConfig& cfg);

// Table-shaped CSV; timings are left out so equal seeds give equal bytes.
void write_bench_csv(std::ostream& out, const BenchReport& report, bool with_timings = false);

}  // namespace pwrc
