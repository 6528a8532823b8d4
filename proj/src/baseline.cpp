#include "pwrc/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pwrc/error.hpp"

namespace pwrc {

KltModel klt_fit(const SampleMatrix& x, const SampleMatrix& y, RankBudget r,
                 std::optional<double> tol) {
  if (x.realizations() != y.realizations()) {
    throw InvalidInput("klt_fit: X has " + std::to_string(x.realizations()) +
                       " realizations, Y has " + std::to_string(y.realizations()));
  }
  const CovarianceBundle cov = bundle(x, y, tol);
  const SvdFactors f = svd(cov.exy * cov.eyy_half_pinv);
  const auto inner = static_cast<Eigen::Index>(std::min<std::size_t>(r.k, f.S.size()));

  KltModel k;
  k.rank = r.k;
  k.decoder = f.U.leftCols(inner);
  k.encoder = f.S.head(inner).asDiagonal() * f.V.leftCols(inner).transpose() * cov.eyy_half_pinv;
  return k;
}

KltModel klt_fit_pooled(std::span<const InterpolationPair> pairs, RankBudget r,
                        std::optional<double> tol) {
  if (pairs.empty()) throw InvalidInput("klt_fit_pooled: no pairs");
  const Eigen::Index m = pairs.front().x.dim();
  const Eigen::Index n = pairs.front().y.dim();
  Eigen::Index cols = 0;
  for (const auto& p : pairs) {
    if (p.x.dim() != m || p.y.dim() != n || p.x.realizations() != p.y.realizations()) {
      throw InvalidInput("klt_fit_pooled: inconsistent pair shapes");
    }
    cols += p.x.realizations();
  }
  Matrix X(m, cols);
  Matrix Y(n, cols);
  Eigen::Index at = 0;
  for (const auto& p : pairs) {
    const Eigen::Index q = p.x.realizations();
    X.middleCols(at, q) = p.x.data();
    Y.middleCols(at, q) = p.y.data();
    at += q;
  }
  return klt_fit(SampleMatrix(std::move(X)), SampleMatrix(std::move(Y)), r, tol);
}

std::vector<KltModel> klt_fit_individual(std::span<const Signal> signals, RankBudget r,
                                         Execution exec, std::optional<double> tol) {
  std::vector<KltModel> out(signals.size());
  for_each_index(signals.size(), exec,
                 [&](std::size_t k) { out[k] = klt_fit(signals[k].x, signals[k].y, r, tol); });
  return out;
}

SampleMatrix klt_apply(const KltModel& k, const SampleMatrix& y) {
  if (y.dim() != k.encoder.cols()) {
    throw InvalidInput("klt_apply: observation dimension " + std::to_string(y.dim()) +
                       " does not match model input " + std::to_string(k.encoder.cols()));
  }
  const Matrix compressed = k.encoder * y.data();
  return SampleMatrix(k.decoder * compressed);
}

double signal_error(const SampleMatrix& reference, const SampleMatrix& estimate) {
  if (reference.dim() != estimate.dim() ||
      reference.realizations() != estimate.realizations()) {
    throw InvalidInput("signal_error: shape mismatch");
  }
  return (reference.data() - estimate.data()).squaredNorm();
}

ComparisonReport aggregate(std::span<const double> transform_error,
                           std::span<const double> klt_error) {
  if (transform_error.size() != klt_error.size()) {
    throw InvalidInput("aggregate: error vectors differ in length");
  }
  if (transform_error.empty()) throw InvalidInput("aggregate: empty test set");

  ComparisonReport rep;
  rep.transform_error.assign(transform_error.begin(), transform_error.end());
  rep.klt_error.assign(klt_error.begin(), klt_error.end());
  rep.ratio.resize(transform_error.size());
  rep.flagged.resize(transform_error.size());

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  rep.delta_min = nan;
  rep.delta_max = nan;
  for (std::size_t k = 0; k < transform_error.size(); ++k) {
    if (transform_error[k] < 0.0 || klt_error[k] < 0.0) {
      throw InvalidInput("aggregate: negative error");
    }
    if (transform_error[k] == 0.0) {
      rep.flagged[k] = true;
      rep.ratio[k] = inf;
      continue;
    }
    const double ratio = klt_error[k] / transform_error[k];
    rep.ratio[k] = ratio;
    if (std::isnan(rep.delta_min) || ratio < rep.delta_min) rep.delta_min = ratio;
    if (std::isnan(rep.delta_max) || ratio > rep.delta_max) rep.delta_max = ratio;
  }
  const auto [lo, hi] = std::minmax_element(rep.transform_error.begin(), rep.transform_error.end());
  rep.eps_min = *lo;
  rep.eps_max = *hi;
  return rep;
}

std::vector<double> transform_errors(const PiecewiseTransform& F, std::span<const Signal> signals,
                                     Execution exec) {
  std::vector<double> out(signals.size());
  for_each_index(signals.size(), exec, [&](std::size_t k) {
    out[k] = signal_error(signals[k].x, apply(F, signals[k].t, signals[k].y));
  });
  return out;
}

ComparisonReport compare(const PiecewiseTransform& F, std::span<const KltModel> klts,
                         std::span<const Signal> testset, Execution exec) {
  if (klts.size() != 1 && klts.size() != testset.size()) {
    throw InvalidInput("compare: expected 1 or " + std::to_string(testset.size()) +
                       " KLT models, got " + std::to_string(klts.size()));
  }
  for (std::size_t k = 0; k < testset.size(); ++k) {
    const KltModel& model = klts.size() == 1 ? klts.front() : klts[k];
    const std::size_t j = locate(F.knots(), testset[k].t);
    if (model.rank != F.sub(j).rank) {
      throw InvalidInput("compare: KLT rank " + std::to_string(model.rank) +
                         " differs from transform rank " + std::to_string(F.sub(j).rank) +
                         " for signal " + std::to_string(k));
    }
  }
  const std::vector<double> eps_f = transform_errors(F, testset, exec);
  std::vector<double> eps_k(testset.size());
  for_each_index(testset.size(), exec, [&](std::size_t k) {
    const KltModel& model = klts.size() == 1 ? klts.front() : klts[k];
    eps_k[k] = signal_error(testset[k].x, klt_apply(model, testset[k].y));
  });
  return aggregate(eps_f, eps_k);
}

}  // namespace pwrc
