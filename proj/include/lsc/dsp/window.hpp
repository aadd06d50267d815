// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cmath>

#include "lsc/common.hpp"

namespace lsc {

// Periodic form divides by n (DFT-even, overlap-add friendly),
// symmetric form divides by n-1.
template <typename Scalar = double>
Vec<Scalar> hann_window(Index n, bool periodic = true) {
  if (n < 2) throw ValidationError("hann_window: n must be >= 2, got " + std::to_string(n));
  const Scalar denom = static_cast<Scalar>(periodic ? n : n - 1);
  Vec<Scalar> w(n);
  for (Index k = 0; k < n; ++k) {
    w[k] = Scalar(0.5) *
           (Scalar(1) - std::cos(Scalar(2) * Scalar(EIGEN_PI) * static_cast<Scalar>(k) / denom));
  }
  return w;
}

}  // namespace lsc
