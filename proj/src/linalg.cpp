#include "pwrc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pwrc/error.hpp"

namespace pwrc {

namespace {

std::string shape(const Matrix& A) {
  return std::to_string(A.rows()) + "x" + std::to_string(A.cols());
}

double resolve_tol(std::optional<double> tol, const Matrix& A) {
  const double t = tol.value_or(default_tolerance(A.rows(), A.cols()));
  if (!(t > 0.0)) throw InvalidInput("tolerance must be positive");
  return t;
}

}  // namespace

double default_tolerance(Eigen::Index rows, Eigen::Index cols) {
  return 1e-10 * static_cast<double>(std::max<Eigen::Index>({rows, cols, 1}));
}

bool all_finite(const Matrix& A) { return A.allFinite(); }

bool is_symmetric(const Matrix& A, double rel_tol) {
  if (A.rows() != A.cols()) return false;
  const double scale = A.norm();
  return (A - A.transpose()).norm() <= rel_tol * std::max(scale, std::numeric_limits<double>::min());
}

SvdFactors svd(const Matrix& A) {
  if (A.size() == 0) throw InvalidInput("svd: empty matrix");
  if (!A.allFinite()) throw InvalidInput("svd: non-finite entries");
  Eigen::JacobiSVD<Matrix> solver(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Matrix truncate(const SvdFactors& f, RankBudget k) {
  const auto keep = static_cast<Eigen::Index>(std::min<std::size_t>(k.k, f.S.size()));
  Matrix out = Matrix::Zero(f.rows(), f.cols());
  if (keep == 0) return out;
  out.noalias() = f.U.leftCols(keep) * f.S.head(keep).asDiagonal() * f.V.leftCols(keep).transpose();
  return out;
}

std::size_t spectral_rank(const Vector& singular_values, double tol) {
  if (singular_values.size() == 0 || singular_values(0) <= 0.0) return 0;
  const double cut = tol * singular_values(0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    if (singular_values(i) > cut) ++r;
  }
  return r;
}

std::size_t numerical_rank(const Matrix& A, std::optional<double> tol) {
  const double t = resolve_tol(tol, A);
  return spectral_rank(svd(A).S, t);
}

Matrix pinv(const SvdFactors& f, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("pinv: tolerance must be positive");
  const auto r = static_cast<Eigen::Index>(spectral_rank(f.S, tol));
  Matrix out = Matrix::Zero(f.cols(), f.rows());
  if (r == 0) return out;
  out.noalias() = f.V.leftCols(r) * f.S.head(r).cwiseInverse().asDiagonal() *
                  f.U.leftCols(r).transpose();
  return out;
}

Matrix pinv(const Matrix& A, std::optional<double> tol) {
  const double t = resolve_tol(tol, A);
  return pinv(svd(A), t);
}

Matrix psd_sqrt(const Matrix& E) {
  if (E.rows() != E.cols() || E.size() == 0) {
    throw InvalidInput("psd_sqrt: expected a square matrix, got " + shape(E));
  }
  if (!E.allFinite()) throw InvalidInput("psd_sqrt: non-finite entries");
  if (!is_symmetric(E, 1e-8)) throw InvalidInput("psd_sqrt: matrix is not symmetric");
  const Matrix sym = 0.5 * (E + E.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  const Vector& lambda = eig.eigenvalues();
  const double top = std::max(0.0, lambda.maxCoeff());
  const double floor =
      static_cast<double>(E.rows()) * std::numeric_limits<double>::epsilon() * top;
  Vector root(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    root(i) = lambda(i) > floor ? std::sqrt(lambda(i)) : 0.0;
  }
  const Matrix& V = eig.eigenvectors();
  Matrix S = V * root.asDiagonal() * V.transpose();
  return 0.5 * (S + S.transpose());
}

RangeProjections range_projections(const Matrix& A, std::optional<double> tol) {
  const double t = resolve_tol(tol, A);
  const SvdFactors f = svd(A);
  const auto r = static_cast<Eigen::Index>(spectral_rank(f.S, t));
  RangeProjections p{Matrix::Zero(A.rows(), A.rows()), Matrix::Zero(A.cols(), A.cols())};
  if (r == 0) return p;
  p.left.noalias() = f.U.leftCols(r) * f.U.leftCols(r).transpose();
  p.right.noalias() = f.V.leftCols(r) * f.V.leftCols(r).transpose();
  return p;
}

Matrix rank_constrained_minimizer(const Matrix& A, const Matrix& B, const Matrix& C,
                                  RankBudget k, const std::optional<Matrix>& S,
                                  const std::optional<Matrix>& T, std::optional<double> tol) {
  // A: m x n, B: m x p, C: q x n, X: p x q.
  if (B.rows() != A.rows() || C.cols() != A.cols()) {
    throw InvalidInput("rank_constrained_minimizer: B " + shape(B) + " and C " + shape(C) +
                       " are not conformable with A " + shape(A));
  }
  const Eigen::Index p = B.cols();
  const Eigen::Index q = C.rows();
  if (S && (S->rows() != p || S->cols() != p)) {
    throw InvalidInput("rank_constrained_minimizer: S must be " + std::to_string(p) + "x" +
                       std::to_string(p));
  }
  if (T && (T->rows() != q || T->cols() != q)) {
    throw InvalidInput("rank_constrained_minimizer: T must be " + std::to_string(q) + "x" +
                       std::to_string(q));
  }

  const RangeProjections pb = range_projections(B, tol);
  const RangeProjections pc = range_projections(C, tol);
  const Matrix core = truncate(svd(pb.left * A * pc.right), k);
  Matrix X = pinv(B, tol) * core * pinv(C, tol);

  if (S) {
    const Matrix left = Matrix::Identity(p, p) + (Matrix::Identity(p, p) - pb.right) * *S;
    X = left * X;
  }
  if (T) {
    const Matrix right = Matrix::Identity(q, q) + *T * (Matrix::Identity(q, q) - pc.left);
    X = X * right;
  }
  return X;
}

}  // namespace pwrc
