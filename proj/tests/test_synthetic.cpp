#include <gtest/gtest.h>

#include <cmath>

#include "pwrc/synthetic.hpp"
#include "test_util.hpp"

using namespace pwrc;

namespace {

double mean_adjacent_distance(const EnsembleDataset& d) {
  double acc = 0.0;
  for (std::size_t k = 1; k < d.size(); ++k) {
    acc += (d.signals[k].x.data() - d.signals[k - 1].x.data()).norm();
  }
  return acc / static_cast<double>(d.size() - 1);
}

}  // namespace

TEST(Synthetic, SmootherMeansCloserNeighbours) {
  SyntheticSpec spec;
  spec.m = 8;
  spec.n = 8;
  spec.q = 16;
  spec.count = 40;
  double prev = std::numeric_limits<double>::infinity();
  for (double s : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    spec.smoothness = s;
    const double d = mean_adjacent_distance(generate_synthetic(spec));
    EXPECT_LT(d, prev) << "smoothness " << s;
    prev = d;
  }
}

TEST(Synthetic, DeterministicForSeed) {
  SyntheticSpec spec;
  spec.count = 6;
  const EnsembleDataset a = generate_synthetic(spec);
  const EnsembleDataset b = generate_synthetic(spec);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a.signals[k].x, b.signals[k].x);
    EXPECT_EQ(a.signals[k].y, b.signals[k].y);
    EXPECT_EQ(a.signals[k].t, static_cast<double>(k + 1));
  }
  spec.seed = 2;
  EXPECT_FALSE(generate_synthetic(spec).signals[0].x == a.signals[0].x);
}

TEST(Synthetic, SingleSignalAndRectangular) {
  SyntheticSpec spec;
  spec.count = 1;
  spec.m = 5;
  spec.n = 3;
  const EnsembleDataset d = generate_synthetic(spec);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.signals[0].x.dim(), 5);
  EXPECT_EQ(d.signals[0].y.dim(), 3);
  EXPECT_NO_THROW(d.validate());
}

TEST(HadamardNoise, ZeroInputAndReproducible) {
  const SampleMatrix zero(Matrix::Zero(4, 5));
  EXPECT_EQ(hadamard_noise(zero, 3).data(), Matrix::Zero(4, 5));
  std::mt19937_64 rng(4);
  const SampleMatrix x(pwrc::testing::random_matrix(rng, 4, 5));
  EXPECT_EQ(hadamard_noise(x, 9).data(), hadamard_noise(x, 9).data());
  EXPECT_NE(hadamard_noise(x, 9).data(), hadamard_noise(x, 10).data());
}

TEST(HadamardNoise, RatioHasZeroMeanAndExpectedSpread) {
  // Y / X = randn * rand entrywise: mean 0, E[(randn rand)^2] = 1 * 1/3.
  const Eigen::Index rows = 200, cols = 250;
  const SampleMatrix x(Matrix::Constant(rows, cols, 2.0));
  const Matrix ratio = hadamard_noise(x, 77).data() / 2.0;
  const double count = static_cast<double>(rows * cols);
  const double mean = ratio.mean();
  const double second = ratio.squaredNorm() / count;
  const double sigma = std::sqrt(1.0 / 3.0);
  EXPECT_LT(std::abs(mean), 3.0 * sigma / std::sqrt(count));
  EXPECT_NEAR(second, 1.0 / 3.0, 0.02);
  EXPECT_TRUE(ratio.allFinite());
}
