#include "pwrc/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "pwrc/error.hpp"

namespace pwrc {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

Matrix normal_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix A(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) A(i, j) = dist(rng);
  return A;
}

}  // namespace

SampleMatrix hadamard_noise(const SampleMatrix& x, std::uint64_t seed) {
  auto rng = make_engine(seed, 0x6e6f697365ULL);
  const Matrix gauss = normal_matrix(rng, x.dim(), x.realizations());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix uniform(x.dim(), x.realizations());
  for (Eigen::Index i = 0; i < uniform.rows(); ++i) {
    for (Eigen::Index j = 0; j < uniform.cols(); ++j) {
      double u = unit(rng);
      while (u == 0.0) u = unit(rng);
      uniform(i, j) = u;
    }
  }
  return SampleMatrix(gauss.cwiseProduct(x.data()).cwiseProduct(uniform));
}

EnsembleDataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.m < 1 || spec.n < 1 || spec.q < 1 || spec.count < 1) {
    throw InvalidInput("synthetic: dimensions must be positive");
  }
  if (!(spec.smoothness > 0.0)) throw InvalidInput("synthetic: smoothness must be positive");

  auto rng = make_engine(spec.seed, 0x6669656c6473ULL);
  std::vector<Matrix> fields;
  fields.reserve(spec.modes + 1);
  for (std::size_t l = 0; l <= spec.modes; ++l) fields.push_back(normal_matrix(rng, spec.m, spec.q));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> phase(spec.modes + 1, 0.0);
  for (std::size_t l = 1; l <= spec.modes; ++l) phase[l] = angle(rng);
  Matrix mixing;
  if (spec.n != spec.m) {
    mixing = normal_matrix(rng, spec.n, spec.m) / std::sqrt(static_cast<double>(spec.m));
  }

  EnsembleDataset data;
  data.m = spec.m;
  data.n = spec.n;
  data.q = spec.q;
  data.signals.reserve(spec.count);
  const double span = spec.count > 1 ? static_cast<double>(spec.count - 1) : 1.0;
  for (std::size_t k = 0; k < spec.count; ++k) {
    const double u = static_cast<double>(k) / span;
    Matrix x = fields[0];
    for (std::size_t l = 1; l <= spec.modes; ++l) {
      const double w = std::cos(2.0 * std::numbers::pi * static_cast<double>(l) * u /
                                    spec.smoothness +
                                phase[l]) /
                       static_cast<double>(l);
      x += w * fields[l];
    }
    Signal s;
    s.t = static_cast<double>(k + 1);
    s.x = SampleMatrix(x);
    const SampleMatrix mixed = spec.n == spec.m ? s.x : SampleMatrix(mixing * x);
    s.y = hadamard_noise(mixed, spec.seed * 1000003ULL + k + 1);
    data.signals.push_back(std::move(s));
  }
  return data;
}

}  // namespace pwrc
