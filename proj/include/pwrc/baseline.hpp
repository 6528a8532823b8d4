#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pwrc/execution.hpp"
#include "pwrc/signal.hpp"
#include "pwrc/transform.hpp"

namespace pwrc {

// Rank-constrained linear estimator K = decoder * encoder fitted on one
// (X, Y) sample pair, without offset.
struct KltModel {
  std::size_t rank = 0;
  Matrix decoder;  // m x min(rank, min(m, n)), orthonormal columns
  Matrix encoder;  // min(rank, min(m, n)) x n

  Matrix matrix() const { return decoder * encoder; }
};

// Minimizer of ||X - K Y||_F over rank K <= r:
//   K = <<X Y^T ((Y Y^T)^{1/2})^+>>_r ((Y Y^T)^{1/2})^+.
KltModel klt_fit(const SampleMatrix& x, const SampleMatrix& y, RankBudget r,
                 std::optional<double> tol = std::nullopt);

// Single KLT over the column-concatenated samples of all pairs.
KltModel klt_fit_pooled(std::span<const InterpolationPair> pairs, RankBudget r,
                        std::optional<double> tol = std::nullopt);

// One KLT per signal, each fitted on that signal's own pair.
std::vector<KltModel> klt_fit_individual(std::span<const Signal> signals, RankBudget r,
                                         Execution exec = Execution::kParallel,
                                         std::optional<double> tol = std::nullopt);

SampleMatrix klt_apply(const KltModel& k, const SampleMatrix& y);

// Squared Frobenius norm of the difference.
double signal_error(const SampleMatrix& reference, const SampleMatrix& estimate);

struct ComparisonReport {
  std::vector<double> transform_error;  // eps_k(F)
  std::vector<double> klt_error;        // eps(K_k)
  std::vector<double> ratio;            // eps(K_k) / eps_k(F); +inf where flagged
  std::vector<bool> flagged;            // eps_k(F) == 0
  // Aggregates over unflagged entries; NaN when every entry is flagged.
  double delta_min = 0.0;
  double delta_max = 0.0;
  double eps_min = 0.0;
  double eps_max = 0.0;
};

// Pure aggregation of per-signal errors. Throws InvalidInput on size mismatch
// or an empty set.
ComparisonReport aggregate(std::span<const double> transform_error,
                           std::span<const double> klt_error);

// Evaluates F and the KLTs on every test signal. klts holds either one model
// (shared by all signals) or one per signal; each must use the same rank as
// the interval of F that its signal falls in.
ComparisonReport compare(const PiecewiseTransform& F, std::span<const KltModel> klts,
                         std::span<const Signal> testset, Execution exec = Execution::kParallel);

// eps_k(F) for every signal, located by its time stamp.
std::vector<double> transform_errors(const PiecewiseTransform& F, std::span<const Signal> signals,
                                     Execution exec = Execution::kParallel);

}  // namespace pwrc
