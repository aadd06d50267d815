// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cmath>
#include <vector>

#include "lsc/common.hpp"

namespace lsc {

// w_i = 1/sqrt(n_i), rescaled so the mean weight is exactly 1. Scaling
// every count by the same factor leaves the result unchanged.
inline Vec<double> compute_class_weights(const std::vector<Index>& counts) {
  if (counts.empty()) throw ValidationError("class weights: no classes");
  Vec<double> w(static_cast<Index>(counts.size()));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 1)
      throw ValidationError("class weights: class " + std::to_string(i) +
                            " has zero samples; drop or merge it first");
    w[static_cast<Index>(i)] = 1.0 / std::sqrt(static_cast<double>(counts[i]));
  }
  const double mean = w.sum() / static_cast<double>(w.size());
  return w / mean;
}

}  // namespace lsc
