#pragma once

#include <cstdint>
#include <random>

#include "pwrc/linalg.hpp"

namespace pwrc::testing {

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix A(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) A(i, j) = dist(rng);
  return A;
}

inline Matrix random_rank(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                          Eigen::Index rank) {
  return random_matrix(rng, rows, rank) * random_matrix(rng, rank, cols);
}

inline Matrix random_psd(std::mt19937_64& rng, Eigen::Index n) {
  const Matrix M = random_matrix(rng, n, n);
  return M * M.transpose();
}

inline double rel_diff(const Matrix& a, const Matrix& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
}

}  // namespace pwrc::testing
