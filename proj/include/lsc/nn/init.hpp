// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cmath>
#include <random>

#include "lsc/nn/tensor.hpp"

namespace lsc {

// He-uniform fan-in init, bound sqrt(6/fan_in). Draws in double so float
// and double graphs consume the rng stream identically.
template <typename Scalar>
void kaiming_uniform(Tensor<Scalar>& t, Index fan_in, std::mt19937& rng) {
  if (fan_in < 1) throw ValidationError("init: fan_in must be positive");
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
  std::uniform_real_distribution<double> u(-bound, bound);
  for (Index i = 0; i < t.numel(); ++i) t.data[i] = static_cast<Scalar>(u(rng));
}

}  // namespace lsc
