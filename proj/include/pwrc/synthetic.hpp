#pragma once

#include <cstddef>
#include <cstdint>

#include "pwrc/io.hpp"

namespace pwrc {

struct SyntheticSpec {
  Eigen::Index m = 16;
  Eigen::Index n = 16;
  Eigen::Index q = 64;
  std::size_t count = 64;   // N
  double smoothness = 1.0;  // larger values vary more slowly in k
  std::uint64_t seed = 1;
  std::size_t modes = 4;
};

// Reference signals X^(k) = F_0 + sum_l cos(2 pi l u_k / smoothness + phi_l) / l * F_l
// over fixed random fields F_l, with u_k = (k - 1) / (N - 1) and t_k = k.
// Observations are Y^(k) = randn o (H X^(k)) o rand, where H = I when m == n
// and a fixed random n x m mixing otherwise.
EnsembleDataset generate_synthetic(const SyntheticSpec& spec);

// Entrywise product of x with a standard-normal matrix and a uniform (0, 1)
// matrix drawn from the given seed.
SampleMatrix hadamard_noise(const SampleMatrix& x, std::uint64_t seed);

}  // namespace pwrc
