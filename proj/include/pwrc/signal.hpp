#pragma once

#include "pwrc/covariance.hpp"

namespace pwrc {

// One member of a signal ensemble: reference and observed samples at time t.
struct Signal {
  double t = 0.0;
  SampleMatrix x;  // m x q
  SampleMatrix y;  // n x q
};

}  // namespace pwrc
