#pragma once

#include <optional>

#include "pwrc/linalg.hpp"

namespace pwrc {

// dim x q matrix whose columns are realizations of one signal at one time.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  // Throws InvalidInput when empty or non-finite.
  explicit SampleMatrix(Matrix data);

  Eigen::Index dim() const { return data_.rows(); }
  Eigen::Index realizations() const { return data_.cols(); }
  const Matrix& data() const { return data_; }

  friend bool operator==(const SampleMatrix& a, const SampleMatrix& b) {
    return a.data_.rows() == b.data_.rows() && a.data_.cols() == b.data_.cols() &&
           a.data_ == b.data_;
  }

 private:
  Matrix data_;
};

// Unnormalized sample covariances of one pair of difference signals. No 1/q
// factor is applied; the gains built from it do not depend on the scale.
struct CovarianceBundle {
  Matrix exy;             // dX dY^T       (m x n)
  Matrix eyy;             // dY dY^T       (n x n)
  Matrix eyy_half;        // eyy^{1/2}
  Matrix eyy_half_pinv;   // (eyy^{1/2})^+
  Matrix exx;             // dX dX^T       (m x m)
};

// Columnwise b - a.
SampleMatrix difference(const SampleMatrix& a, const SampleMatrix& b);

// a.data * b.data^T. Requires equal realization counts.
Matrix gram(const SampleMatrix& a, const SampleMatrix& b);

CovarianceBundle bundle(const SampleMatrix& dx, const SampleMatrix& dy,
                        std::optional<double> tol = std::nullopt);

}  // namespace pwrc
