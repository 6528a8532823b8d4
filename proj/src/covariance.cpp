#include "pwrc/covariance.hpp"

#include <string>
#include <utility>

#include "pwrc/error.hpp"

namespace pwrc {

SampleMatrix::SampleMatrix(Matrix data) : data_(std::move(data)) {
  if (data_.rows() < 1 || data_.cols() < 1) throw InvalidInput("sample matrix must be non-empty");
  if (!data_.allFinite()) throw InvalidInput("sample matrix has non-finite entries");
}

SampleMatrix difference(const SampleMatrix& a, const SampleMatrix& b) {
  if (a.dim() != b.dim() || a.realizations() != b.realizations()) {
    throw InvalidInput("difference: shapes " + std::to_string(a.dim()) + "x" +
                       std::to_string(a.realizations()) + " and " + std::to_string(b.dim()) +
                       "x" + std::to_string(b.realizations()) + " differ");
  }
  return SampleMatrix(b.data() - a.data());
}

Matrix gram(const SampleMatrix& a, const SampleMatrix& b) {
  if (a.realizations() != b.realizations()) {
    throw InvalidInput("gram: realization counts " + std::to_string(a.realizations()) + " and " +
                       std::to_string(b.realizations()) + " differ");
  }
  Matrix g(a.dim(), b.dim());
  g.noalias() = a.data() * b.data().transpose();
  return g;
}

CovarianceBundle bundle(const SampleMatrix& dx, const SampleMatrix& dy, std::optional<double> tol) {
  CovarianceBundle out;
  out.exy = gram(dx, dy);
  const Matrix eyy = gram(dy, dy);
  out.eyy = 0.5 * (eyy + eyy.transpose());
  const Matrix exx = gram(dx, dx);
  out.exx = 0.5 * (exx + exx.transpose());
  out.eyy_half = psd_sqrt(out.eyy);
  out.eyy_half_pinv = pinv(out.eyy_half, tol);
  return out;
}

}  // namespace pwrc
