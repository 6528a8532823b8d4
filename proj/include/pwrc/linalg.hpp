#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

namespace pwrc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Upper bound on the rank of a fitted or truncated operator.
struct RankBudget {
  std::size_t k = 0;
};

// Full SVD A = U diag(S) V^T with U (m x m), V (n x n) orthogonal and S sorted
// non-increasing.
struct SvdFactors {
  Matrix U;
  Vector S;
  Matrix V;

  Eigen::Index rows() const { return U.rows(); }
  Eigen::Index cols() const { return V.rows(); }
};

struct RangeProjections {
  Matrix left;   // onto range(A)
  Matrix right;  // onto range(A^T)
};

// Relative singular-value threshold used when none is given: 1e-10 * max(m, n).
double default_tolerance(Eigen::Index rows, Eigen::Index cols);

bool all_finite(const Matrix& A);
bool is_symmetric(const Matrix& A, double rel_tol = 1e-8);

// Throws InvalidInput on non-finite entries.
SvdFactors svd(const Matrix& A);

// Best rank-k approximation sum_{i<=k} s_i u_i v_i^T. k beyond the rank
// returns the input itself. Equal singular values at the cut are resolved by
// column order of the deterministic SVD, so the result is one of several
// optima in that case.
Matrix truncate(const SvdFactors& f, RankBudget k);

// Count of singular values above tol * s_1; zero for the zero matrix.
std::size_t spectral_rank(const Vector& singular_values, double tol);
std::size_t numerical_rank(const Matrix& A, std::optional<double> tol = std::nullopt);

// Moore-Penrose inverse with 1/s_i applied where s_i > tol * s_1.
Matrix pinv(const SvdFactors& f, double tol);
Matrix pinv(const Matrix& A, std::optional<double> tol = std::nullopt);

// Symmetric PSD square root by eigendecomposition. Eigenvalues at round-off
// level (below dim * eps * lambda_max) and negative ones are set to zero.
// Throws InvalidInput if E is not square or not symmetric to 1e-8 relative.
Matrix psd_sqrt(const Matrix& E);

RangeProjections range_projections(const Matrix& A, std::optional<double> tol = std::nullopt);

// Minimizer of ||A - B X C||_F over X with rank X <= k:
//   X0 = (I + L_B) B^+ <<P_{B,L} A P_{C,R}>>_k C^+ (I + L_C),
//   L_B = (I - P_{B,R}) S,  L_C = T (I - P_{C,L}).
// Absent S and T are taken as zero. Throws InvalidInput on shape mismatch.
Matrix rank_constrained_minimizer(const Matrix& A, const Matrix& B, const Matrix& C,
                                  RankBudget k, const std::optional<Matrix>& S = std::nullopt,
                                  const std::optional<Matrix>& T = std::nullopt,
                                  std::optional<double> tol = std::nullopt);

}  // namespace pwrc
