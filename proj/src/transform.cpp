#include "pwrc/transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "pwrc/error.hpp"

namespace pwrc {

namespace {

std::string dims(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void check_observation(const PiecewiseTransform& F, const SampleMatrix& y) {
  if (y.dim() != F.n() || y.realizations() != F.q()) {
    throw InvalidInput("observation is " + dims(y.dim(), y.realizations()) + ", model expects " +
                       dims(F.n(), F.q()));
  }
}

std::vector<std::size_t> expand_ranks(const FitConfig& cfg, std::size_t intervals,
                                      std::size_t max_rank) {
  std::vector<std::size_t> ranks;
  if (cfg.ranks.size() == 1) {
    ranks.assign(intervals, cfg.ranks.front());
  } else if (cfg.ranks.size() == intervals) {
    ranks = cfg.ranks;
  } else {
    throw InvalidRank("expected 1 or " + std::to_string(intervals) + " ranks, got " +
                      std::to_string(cfg.ranks.size()));
  }
  for (std::size_t r : ranks) {
    if (r < 1 || r > max_rank) {
      throw InvalidRank("rank " + std::to_string(r) + " outside [1, " + std::to_string(max_rank) +
                        "]");
    }
  }
  return ranks;
}

}  // namespace

Knots::Knots(std::vector<double> t) : t_(std::move(t)) {
  if (t_.size() < 2) throw InvalidInput("at least two knots are required");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!std::isfinite(t_[i])) throw InvalidInput("knot times must be finite");
    if (i > 0 && t_[i] < t_[i - 1]) throw InvalidInput("knot times must be nondecreasing");
  }
}

bool Knots::strictly_increasing() const {
  return std::adjacent_find(t_.begin(), t_.end(), std::greater_equal<>()) == t_.end();
}

std::size_t locate(const Knots& knots, double t) {
  if (!(t >= knots.front() && t <= knots.back())) {
    throw OutOfDomain("time " + std::to_string(t) + " outside [" + std::to_string(knots.front()) +
                      ", " + std::to_string(knots.back()) + "]");
  }
  const auto& v = knots.values();
  const auto it = std::upper_bound(v.begin(), v.end(), t);
  const auto j = static_cast<std::size_t>(std::distance(v.begin(), it)) - 1;
  return std::min(j, knots.intervals() - 1);
}

GainSolution sub_transform_gain(const CovarianceBundle& b, RankBudget r) {
  const Matrix A = b.exy * b.eyy_half_pinv;
  const SvdFactors f = svd(A);
  GainSolution out;
  out.gain = truncate(f, r) * b.eyy_half_pinv;
  out.spectrum = f.S;
  out.exx_trace = b.exx.trace();
  return out;
}

double knot_error(const Vector& spectrum, double exx_trace, RankBudget r) {
  const auto keep = static_cast<Eigen::Index>(std::min<std::size_t>(r.k, spectrum.size()));
  const double captured = spectrum.head(keep).squaredNorm();
  return std::max(0.0, exx_trace - captured);
}

GainFactors factorize(const Matrix& G, RankBudget r, Factorization mode,
                      std::optional<double> tol) {
  const auto inner = static_cast<Eigen::Index>(r.k);
  GainFactors out{Matrix::Zero(G.rows(), inner), Matrix::Zero(inner, G.cols())};
  if (inner == 0) return out;
  const SvdFactors f = svd(G);
  const double t = tol.value_or(default_tolerance(G.rows(), G.cols()));
  const auto keep = std::min<Eigen::Index>(
      {inner, static_cast<Eigen::Index>(spectral_rank(f.S, t)), f.S.size()});
  if (keep == 0) return out;
  const auto U = f.U.leftCols(keep);
  const auto S = f.S.head(keep);
  const auto Vt = f.V.leftCols(keep).transpose();
  if (mode == Factorization::kScaledDecoder) {
    out.decoder.leftCols(keep) = U * S.asDiagonal();
    out.encoder.topRows(keep) = Vt;
  } else {
    out.decoder.leftCols(keep) = U;
    out.encoder.topRows(keep) = S.asDiagonal() * Vt;
  }
  return out;
}

PiecewiseTransform::PiecewiseTransform(Knots knots, std::vector<SubTransform> subs,
                                       Eigen::Index m, Eigen::Index n, Eigen::Index q,
                                       Factorization factorization)
    : knots_(std::move(knots)),
      subs_(std::move(subs)),
      m_(m),
      n_(n),
      q_(q),
      factorization_(factorization) {
  if (m_ < 1 || n_ < 1 || q_ < 1) throw InvalidInput("model dimensions must be positive");
  if (subs_.size() != knots_.intervals()) {
    throw InvalidInput("expected " + std::to_string(knots_.intervals()) + " sub-transforms, got " +
                       std::to_string(subs_.size()));
  }
  for (std::size_t j = 0; j < subs_.size(); ++j) {
    const SubTransform& s = subs_[j];
    const auto r = static_cast<Eigen::Index>(s.rank);
    if (s.index != j || s.t_begin != knots_[j] || s.t_end != knots_[j + 1]) {
      throw InvalidInput("sub-transform " + std::to_string(j) + " does not match its interval");
    }
    if (s.offset.rows() != m_ || s.offset.cols() != q_ || s.decoder.rows() != m_ ||
        s.decoder.cols() != r || s.encoder.rows() != r || s.encoder.cols() != n_) {
      throw InvalidInput("sub-transform " + std::to_string(j) + " has inconsistent shapes");
    }
  }
}

const SubTransform& PiecewiseTransform::sub(std::size_t j) const {
  if (j >= subs_.size()) {
    throw InvalidInput("interval index " + std::to_string(j) + " out of range [0, " +
                       std::to_string(subs_.size()) + ")");
  }
  return subs_[j];
}

PiecewiseTransform fit(std::span<const InterpolationPair> pairs, const FitConfig& cfg) {
  if (pairs.size() < 2) throw InvalidInput("fit needs at least two interpolation pairs");
  const Eigen::Index m = pairs.front().x.dim();
  const Eigen::Index n = pairs.front().y.dim();
  const Eigen::Index q = pairs.front().x.realizations();
  std::vector<double> times;
  times.reserve(pairs.size());
  for (const InterpolationPair& pr : pairs) {
    if (pr.x.dim() != m || pr.y.dim() != n || pr.x.realizations() != q ||
        pr.y.realizations() != q) {
      throw InvalidInput("interpolation pairs must share dimensions " + dims(m, q) + " / " +
                         dims(n, q));
    }
    times.push_back(pr.t);
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] == times[i - 1]) {
      throw DegenerateKnots("duplicate knot at t = " + std::to_string(times[i]));
    }
  }
  Knots knots(std::move(times));
  const std::size_t intervals = knots.intervals();
  const auto ranks = expand_ranks(cfg, intervals, static_cast<std::size_t>(std::min(m, n)));

  std::vector<SubTransform> subs(intervals);
  for_each_index(intervals, cfg.execution, [&](std::size_t j) {
    const SampleMatrix dx = difference(pairs[j].x, pairs[j + 1].x);
    const SampleMatrix dy = difference(pairs[j].y, pairs[j + 1].y);
    const CovarianceBundle cov = bundle(dx, dy, cfg.tol);
    GainSolution g = sub_transform_gain(cov, RankBudget{ranks[j]});
    GainFactors fac = factorize(g.gain, RankBudget{ranks[j]}, cfg.factorization, cfg.tol);

    const InterpolationPair& anchor = pairs[j == 0 ? 1 : j];
    SubTransform& s = subs[j];
    s.index = j;
    s.t_begin = knots[j];
    s.t_end = knots[j + 1];
    s.rank = ranks[j];
    s.offset = anchor.x.data() - fac.decoder * (fac.encoder * anchor.y.data());
    s.decoder = std::move(fac.decoder);
    s.encoder = std::move(fac.encoder);
    s.spectrum = std::move(g.spectrum);
    s.exx_trace = g.exx_trace;
  });
  return PiecewiseTransform(std::move(knots), std::move(subs), m, n, q, cfg.factorization);
}

CompressedBlock compress(const PiecewiseTransform& F, double t, const SampleMatrix& y) {
  check_observation(F, y);
  const std::size_t j = locate(F.knots(), t);
  CompressedBlock block;
  block.interval = j;
  block.t = t;
  block.payload = F.sub(j).encoder * y.data();
  return block;
}

SampleMatrix decompress(const PiecewiseTransform& F, const CompressedBlock& block) {
  const SubTransform& s = F.sub(block.interval);
  if (block.payload.rows() != static_cast<Eigen::Index>(s.rank) ||
      block.payload.cols() != F.q()) {
    throw InvalidInput("payload is " + dims(block.payload.rows(), block.payload.cols()) +
                       ", interval " + std::to_string(block.interval) + " expects " +
                       dims(static_cast<Eigen::Index>(s.rank), F.q()));
  }
  return SampleMatrix(s.offset + s.decoder * block.payload);
}

SampleMatrix apply_sub(const PiecewiseTransform& F, std::size_t j, const SampleMatrix& y) {
  const SubTransform& s = F.sub(j);
  check_observation(F, y);
  const Matrix compressed = s.encoder * y.data();
  return SampleMatrix(s.offset + s.decoder * compressed);
}

SampleMatrix apply(const PiecewiseTransform& F, double t, const SampleMatrix& y) {
  return apply_sub(F, locate(F.knots(), t), y);
}

double predicted_knot_error(const PiecewiseTransform& F, std::size_t j) {
  const SubTransform& s = F.sub(j);
  return knot_error(s.spectrum, s.exx_trace, RankBudget{s.rank});
}

CompressionRatio compression_ratio(const PiecewiseTransform& F, std::size_t j) {
  return {F.sub(j).rank, static_cast<std::size_t>(F.m())};
}

std::vector<CompressionRatio> compression_ratios(const PiecewiseTransform& F) {
  std::vector<CompressionRatio> out;
  out.reserve(F.intervals());
  for (std::size_t j = 0; j < F.intervals(); ++j) out.push_back(compression_ratio(F, j));
  return out;
}

std::optional<CompressionRatio> uniform_compression_ratio(const PiecewiseTransform& F) {
  const auto all = compression_ratios(F);
  if (std::adjacent_find(all.begin(), all.end(), std::not_equal_to<>()) != all.end()) {
    return std::nullopt;
  }
  return all.front();
}

}  // namespace pwrc
