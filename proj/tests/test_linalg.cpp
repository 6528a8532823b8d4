#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "pwrc/error.hpp"
#include "pwrc/linalg.hpp"
#include "test_util.hpp"

using namespace pwrc;
using pwrc::testing::random_matrix;
using pwrc::testing::random_psd;
using pwrc::testing::random_rank;
using pwrc::testing::rel_diff;

namespace {

Matrix diag(std::initializer_list<double> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

// Squared singular values from the eigenvalues of A^T A (or A A^T), sorted
// non-increasing. Independent of the SVD path.
Vector squared_singular_values(const Matrix& A) {
  const Matrix gram = A.rows() >= A.cols() ? Matrix(A.transpose() * A) : Matrix(A * A.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  Vector ev = eig.eigenvalues().reverse();
  return ev.cwiseMax(0.0);
}

}  // namespace

TEST(Svd, DiagonalInput) {
  const SvdFactors f = svd(diag({3, 2, 1}));
  EXPECT_NEAR(f.S(0), 3.0, 1e-14);
  EXPECT_NEAR(f.S(1), 2.0, 1e-14);
  EXPECT_NEAR(f.S(2), 1.0, 1e-14);
  EXPECT_LT((f.U.cwiseAbs() - Matrix::Identity(3, 3)).norm(), 1e-14);
  EXPECT_LT((f.V.cwiseAbs() - Matrix::Identity(3, 3)).norm(), 1e-14);
}

TEST(Svd, ZeroMatrix) {
  const SvdFactors f = svd(Matrix::Zero(2, 3));
  ASSERT_EQ(f.S.size(), 2);
  EXPECT_EQ(f.S(0), 0.0);
  EXPECT_EQ(f.S(1), 0.0);
  EXPECT_EQ(f.U.rows(), 2);
  EXPECT_EQ(f.V.rows(), 3);
}

TEST(Svd, ReconstructsRandomInput) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix A = random_matrix(rng, 5, 4);
    const SvdFactors f = svd(A);
    Matrix sigma = Matrix::Zero(5, 4);
    sigma.diagonal() = f.S;
    EXPECT_LT(rel_diff(f.U * sigma * f.V.transpose(), A), 1e-10);
    EXPECT_LT((f.U.transpose() * f.U - Matrix::Identity(5, 5)).norm(), 1e-12);
    EXPECT_LT((f.V.transpose() * f.V - Matrix::Identity(4, 4)).norm(), 1e-12);
    for (Eigen::Index i = 1; i < f.S.size(); ++i) EXPECT_GE(f.S(i - 1), f.S(i));
    EXPECT_GE(f.S.minCoeff(), 0.0);
  }
}

TEST(Svd, Deterministic) {
  std::mt19937_64 rng(3);
  const Matrix A = random_matrix(rng, 6, 7);
  const SvdFactors a = svd(A);
  const SvdFactors b = svd(A);
  EXPECT_EQ(a.U, b.U);
  EXPECT_EQ(a.S, b.S);
  EXPECT_EQ(a.V, b.V);
}

TEST(Svd, RejectsNonFinite) {
  Matrix A = Matrix::Identity(3, 3);
  A(1, 2) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(svd(A), InvalidInput);
  A(1, 2) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(svd(A), InvalidInput);
}

TEST(Truncate, DiagonalAndEmptySum) {
  const SvdFactors f = svd(diag({3, 2, 1}));
  EXPECT_LT((truncate(f, RankBudget{2}) - diag({3, 2, 0})).norm(), 1e-14);
  EXPECT_EQ(truncate(f, RankBudget{0}), Matrix::Zero(3, 3));
}

TEST(Truncate, BudgetBeyondRankReturnsInput) {
  std::mt19937_64 rng(5);
  const Matrix A = random_rank(rng, 6, 5, 2);
  const SvdFactors f = svd(A);
  EXPECT_LT(rel_diff(truncate(f, RankBudget{2}), A), 1e-12);
  EXPECT_LT(rel_diff(truncate(f, RankBudget{9}), A), 1e-12);
}

TEST(Truncate, EckartYoungIdentity) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<int> dim(1, 10);
    const Matrix A = random_matrix(rng, dim(rng), dim(rng));
    const Vector s2 = squared_singular_values(A);
    const SvdFactors f = svd(A);
    for (std::size_t k = 0; k <= static_cast<std::size_t>(s2.size()); ++k) {
      const double err = (A - truncate(f, RankBudget{k})).squaredNorm();
      const double tail = s2.tail(s2.size() - static_cast<Eigen::Index>(k)).sum();
      EXPECT_NEAR(err, tail, 1e-10 * std::max(1.0, A.squaredNorm()));
    }
  }
}

TEST(Truncate, SixByFourRankTwo) {
  std::mt19937_64 rng(23);
  const Matrix A = random_matrix(rng, 6, 4);
  const Vector s2 = squared_singular_values(A);
  const double err = (A - truncate(svd(A), RankBudget{2})).squaredNorm();
  EXPECT_NEAR(err / (s2(2) + s2(3)), 1.0, 1e-10);
}

TEST(Pinv, DiagonalAndZero) {
  EXPECT_LT((pinv(diag({2, 0})) - diag({0.5, 0})).norm(), 1e-15);
  EXPECT_EQ(pinv(Matrix::Zero(3, 2)), Matrix::Zero(2, 3));
}

TEST(Pinv, MoorePenroseIdentities) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> dim(1, 8);
    const int m = dim(rng);
    const int n = dim(rng);
    std::uniform_int_distribution<int> rk(1, std::min(m, n));
    const Matrix A = random_rank(rng, m, n, rk(rng));
    const Matrix P = pinv(A);
    const double a = A.norm();
    const double p = P.norm();
    EXPECT_LT((A * P * A - A).norm(), 1e-8 * a);
    EXPECT_LT((P * A * P - P).norm(), 1e-8 * p);
    EXPECT_LT(((A * P).transpose() - A * P).norm(), 1e-8);
    EXPECT_LT(((P * A).transpose() - P * A).norm(), 1e-8);
  }
}

TEST(Pinv, RankTwoFourByFour) {
  std::mt19937_64 rng(31);
  const Matrix A = random_rank(rng, 4, 4, 2);
  EXPECT_LT((A * pinv(A) * A - A).norm(), 1e-8 * A.norm());
}

TEST(Pinv, ThresholdIsRelative) {
  const Matrix A = diag({1.0, 1e-12});
  EXPECT_LT((pinv(A, 1e-9) - diag({1.0, 0.0})).norm(), 1e-15);
  EXPECT_NEAR(pinv(A, 1e-14)(1, 1), 1e12, 1.0);
  EXPECT_THROW(pinv(A, 0.0), InvalidInput);
}

TEST(PsdSqrt, DiagonalAndIdentity) {
  EXPECT_LT((psd_sqrt(diag({4, 9})) - diag({2, 3})).norm(), 1e-14);
  EXPECT_LT((psd_sqrt(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(PsdSqrt, TwoByTwoClosedForm) {
  Matrix E(2, 2);
  E << 2, 1, 1, 2;
  // Eigenvalues 3 and 1 with eigenvectors (1, 1) and (1, -1).
  Matrix expected(2, 2);
  expected << 1.3660254037844386, 0.36602540378443865, 0.36602540378443865, 1.3660254037844386;
  const Matrix S = psd_sqrt(E);
  EXPECT_LT((S - expected).norm(), 1e-14);
  EXPECT_LT((S * S - E).norm(), 1e-10);
}

TEST(PsdSqrt, RandomPsdSquaresBack) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> dim(1, 12);
    const int n = dim(rng);
    std::uniform_int_distribution<int> rk(1, n);
    const Matrix M = random_matrix(rng, n, rk(rng));
    const Matrix E = M * M.transpose();
    const Matrix S = psd_sqrt(E);
    EXPECT_LT((S * S - E).norm(), 1e-8 * E.norm());
    EXPECT_EQ(S, S.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(S);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-10 * std::max(1.0, S.norm()));
  }
}

TEST(PsdSqrt, RejectsAsymmetricAndNonSquare) {
  Matrix E(2, 2);
  E << 2, 1, 0, 2;
  EXPECT_THROW(psd_sqrt(E), InvalidInput);
  EXPECT_THROW(psd_sqrt(Matrix::Identity(2, 3)), InvalidInput);
}

TEST(PsdSqrt, ClampsNegativeEigenvalues) {
  const Matrix S = psd_sqrt(diag({4, -1e-3}));
  EXPECT_LT((S - diag({2, 0})).norm(), 1e-15);
}

TEST(RangeProjections, IdentityAndZero) {
  const auto id = range_projections(Matrix::Identity(3, 3));
  EXPECT_LT((id.left - Matrix::Identity(3, 3)).norm(), 1e-14);
  EXPECT_LT((id.right - Matrix::Identity(3, 3)).norm(), 1e-14);
  const auto z = range_projections(Matrix::Zero(2, 4));
  EXPECT_EQ(z.left, Matrix::Zero(2, 2));
  EXPECT_EQ(z.right, Matrix::Zero(4, 4));
}

TEST(RangeProjections, RankOneClosedForm) {
  std::mt19937_64 rng(41);
  const Vector u = random_matrix(rng, 5, 1);
  const Vector v = random_matrix(rng, 3, 1);
  const auto p = range_projections(u * v.transpose());
  EXPECT_LT((p.left - u * u.transpose() / u.squaredNorm()).norm(), 1e-10);
  EXPECT_LT((p.right - v * v.transpose() / v.squaredNorm()).norm(), 1e-10);
}

TEST(RangeProjections, ProjectorProperties) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> dim(1, 9);
    const int m = dim(rng);
    const int n = dim(rng);
    std::uniform_int_distribution<int> rk(1, std::min(m, n));
    const Matrix A = random_rank(rng, m, n, rk(rng));
    const auto p = range_projections(A);
    for (const Matrix* P : {&p.left, &p.right}) {
      EXPECT_LT((*P * *P - *P).norm(), 1e-8);
      EXPECT_LT((P->transpose() - *P).norm(), 1e-8);
    }
    EXPECT_LT((p.left * A - A).norm(), 1e-8 * A.norm());
    EXPECT_LT((A * p.right - A).norm(), 1e-8 * A.norm());
  }
}

TEST(NumericalRank, Examples) {
  EXPECT_EQ(numerical_rank(Matrix::Identity(3, 3)), 3u);
  EXPECT_EQ(numerical_rank(Matrix::Zero(3, 4)), 0u);
  std::mt19937_64 rng(47);
  const Matrix uv = random_matrix(rng, 4, 1) * random_matrix(rng, 1, 6);
  EXPECT_EQ(numerical_rank(uv), 1u);
  EXPECT_THROW(numerical_rank(uv, -1.0), InvalidInput);
}

TEST(Minimizer, ReducesToEckartYoung) {
  const Matrix A = diag({3, 2, 1});
  const Matrix I = Matrix::Identity(3, 3);
  EXPECT_LT((rank_constrained_minimizer(A, I, I, RankBudget{1}) - diag({3, 0, 0})).norm(), 1e-13);
  EXPECT_LT((rank_constrained_minimizer(A, I, I, RankBudget{3}) - A).norm(), 1e-13);
  EXPECT_LT((rank_constrained_minimizer(A, I, I, RankBudget{7}) - A).norm(), 1e-13);
}

TEST(Minimizer, BeatsRandomAndPerturbedCandidates) {
  std::mt19937_64 rng(53);
  const Matrix A = random_matrix(rng, 4, 4);
  const Matrix B = random_matrix(rng, 4, 3);
  const Matrix C = random_matrix(rng, 2, 4);
  const Matrix X0 = rank_constrained_minimizer(A, B, C, RankBudget{1});
  ASSERT_EQ(X0.rows(), 3);
  ASSERT_EQ(X0.cols(), 2);
  const double best = (A - B * X0 * C).norm();

  // Random rank-1 candidates, and rank-1 perturbations of the optimum.
  const SvdFactors f = svd(X0);
  const Vector u = f.U.col(0) * f.S(0);
  const Vector v = f.V.col(0);
  std::normal_distribution<double> eps(0.0, 1e-3);
  for (int i = 0; i < 1000; ++i) {
    const Matrix X = random_matrix(rng, 3, 1) * random_matrix(rng, 1, 2);
    EXPECT_LE(best, (A - B * X * C).norm() + 1e-12);
    Vector du(3), dv(2);
    for (auto& x : du) x = eps(rng);
    for (auto& x : dv) x = eps(rng);
    const Matrix Xp = (u + du) * (v + dv).transpose();
    EXPECT_LE(best, (A - B * Xp * C).norm() + 1e-12);
  }
}

TEST(Minimizer, ArbitrarySAndTPreserveOptimality) {
  std::mt19937_64 rng(59);
  // Rank-deficient B and C so that L_B and L_C are nonzero.
  const Matrix A = random_matrix(rng, 5, 6);
  const Matrix B = random_rank(rng, 5, 4, 2);
  const Matrix C = random_rank(rng, 3, 6, 2);
  const Matrix S = random_matrix(rng, 4, 4);
  const Matrix T = random_matrix(rng, 3, 3);
  const Matrix X0 = rank_constrained_minimizer(A, B, C, RankBudget{1});
  const Matrix X1 = rank_constrained_minimizer(A, B, C, RankBudget{1}, S, T);
  EXPECT_GT((X1 - X0).norm(), 1e-6);
  EXPECT_NEAR((A - B * X0 * C).norm(), (A - B * X1 * C).norm(), 1e-10);
}

TEST(Minimizer, MonotoneInBudgetAndRankBounded) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix A = random_matrix(rng, 6, 5);
    const Matrix B = random_matrix(rng, 6, 4);
    const Matrix C = random_matrix(rng, 4, 5);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= 4; ++k) {
      const Matrix X = rank_constrained_minimizer(A, B, C, RankBudget{k});
      const double err = (A - B * X * C).norm();
      EXPECT_LE(err, prev + 1e-12);
      prev = err;
      EXPECT_LE(numerical_rank(X, 1e-8), k);
    }
  }
}

TEST(Minimizer, RejectsShapeMismatch) {
  const Matrix A = Matrix::Ones(3, 4);
  EXPECT_THROW(rank_constrained_minimizer(A, Matrix::Ones(2, 2), Matrix::Ones(2, 4), RankBudget{1}),
               InvalidInput);
  EXPECT_THROW(rank_constrained_minimizer(A, Matrix::Ones(3, 2), Matrix::Ones(2, 5), RankBudget{1}),
               InvalidInput);
  EXPECT_THROW(rank_constrained_minimizer(A, Matrix::Ones(3, 2), Matrix::Ones(2, 4), RankBudget{1},
                                          Matrix::Ones(3, 3)),
               InvalidInput);
}
