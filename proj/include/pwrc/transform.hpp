#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pwrc/covariance.hpp"
#include "pwrc/execution.hpp"
#include "pwrc/linalg.hpp"

namespace pwrc {

// Nondecreasing time stamps t_0 <= ... <= t_{p-1}, p >= 2.
class Knots {
 public:
  explicit Knots(std::vector<double> t);

  std::size_t size() const { return t_.size(); }
  std::size_t intervals() const { return t_.size() - 1; }
  double operator[](std::size_t i) const { return t_[i]; }
  double front() const { return t_.front(); }
  double back() const { return t_.back(); }
  const std::vector<double>& values() const { return t_; }
  bool strictly_increasing() const;

 private:
  std::vector<double> t_;
};

// Zero-based interval j with t in [t_j, t_{j+1}); the last interval is closed
// on the right. At an interior knot the interval to its right wins. Throws
// OutOfDomain outside [t_0, t_{p-1}].
std::size_t locate(const Knots& knots, double t);

struct InterpolationPair {
  SampleMatrix x;  // reference, m x q
  SampleMatrix y;  // observation, n x q
  double t = 0.0;
};

enum class Factorization {
  kScaledDecoder,       // D = U_r S_r,  C = V_r^T
  kOrthonormalDecoder,  // D = U_r,      C = S_r V_r^T
};

struct FitConfig {
  // A single shared rank or one rank per interval.
  std::vector<std::size_t> ranks;
  std::optional<double> tol;
  Factorization factorization = Factorization::kOrthonormalDecoder;
  Execution execution = Execution::kParallel;

  static FitConfig uniform(std::size_t rank) {
    FitConfig cfg;
    cfg.ranks = {rank};
    return cfg;
  }
};

// Rank-constrained gain of one interval together with the quantities needed to
// evaluate its knot error in closed form.
struct GainSolution {
  Matrix gain;          // <<Exy (Eyy^{1/2})^+>>_r (Eyy^{1/2})^+
  Vector spectrum;      // singular values of Exy (Eyy^{1/2})^+
  double exx_trace = 0.0;
};

GainSolution sub_transform_gain(const CovarianceBundle& b, RankBudget r);

// trace(Exx) - sum_{i<r} s_i^2, clamped at zero.
double knot_error(const Vector& spectrum, double exx_trace, RankBudget r);

struct GainFactors {
  Matrix decoder;  // m x r
  Matrix encoder;  // r x n
};

// Splits G into decoder * encoder with inner dimension r. Directions beyond
// the numerical rank of G are stored as zero columns/rows.
GainFactors factorize(const Matrix& G, RankBudget r, Factorization mode,
                      std::optional<double> tol = std::nullopt);

struct SubTransform {
  std::size_t index = 0;
  double t_begin = 0.0;
  double t_end = 0.0;
  std::size_t rank = 0;
  Matrix offset;   // m x q
  Matrix decoder;  // m x r
  Matrix encoder;  // r x n
  Vector spectrum;
  double exx_trace = 0.0;

  Matrix gain() const { return decoder * encoder; }
};

class PiecewiseTransform {
 public:
  // Throws InvalidInput when the pieces do not match the knots or dimensions.
  PiecewiseTransform(Knots knots, std::vector<SubTransform> subs, Eigen::Index m, Eigen::Index n,
                     Eigen::Index q, Factorization factorization);

  const Knots& knots() const { return knots_; }
  const std::vector<SubTransform>& subs() const { return subs_; }
  const SubTransform& sub(std::size_t j) const;
  std::size_t intervals() const { return subs_.size(); }
  Eigen::Index m() const { return m_; }
  Eigen::Index n() const { return n_; }
  Eigen::Index q() const { return q_; }
  Factorization factorization() const { return factorization_; }

 private:
  Knots knots_;
  std::vector<SubTransform> subs_;
  Eigen::Index m_;
  Eigen::Index n_;
  Eigen::Index q_;
  Factorization factorization_;
};

// Fits one sub-transform per interval. Interval j >= 1 anchors at its left
// pair (F_j[Y_j] = X_j); interval 0 anchors at its right pair (F_0[Y_1] = X_1).
PiecewiseTransform fit(std::span<const InterpolationPair> pairs, const FitConfig& cfg);

struct CompressedBlock {
  std::size_t interval = 0;
  Matrix payload;  // r_j x q
  double t = 0.0;
};

CompressedBlock compress(const PiecewiseTransform& F, double t, const SampleMatrix& y);
SampleMatrix decompress(const PiecewiseTransform& F, const CompressedBlock& block);

// offset_j + G_j y, addressing interval j directly.
SampleMatrix apply_sub(const PiecewiseTransform& F, std::size_t j, const SampleMatrix& y);
// apply_sub on the interval located for t.
SampleMatrix apply(const PiecewiseTransform& F, double t, const SampleMatrix& y);

// Closed-form squared error of interval j at its far knot: t_{j+1} for j >= 1,
// t_0 for the right-anchored first interval.
double predicted_knot_error(const PiecewiseTransform& F, std::size_t j);

struct CompressionRatio {
  std::size_t rank = 0;
  std::size_t dim = 1;

  double value() const { return static_cast<double>(rank) / static_cast<double>(dim); }
  friend bool operator==(const CompressionRatio&, const CompressionRatio&) = default;
};

CompressionRatio compression_ratio(const PiecewiseTransform& F, std::size_t j);
std::vector<CompressionRatio> compression_ratios(const PiecewiseTransform& F);
// Present only when every interval uses the same rank.
std::optional<CompressionRatio> uniform_compression_ratio(const PiecewiseTransform& F);

}  // namespace pwrc
