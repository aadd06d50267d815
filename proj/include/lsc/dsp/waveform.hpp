// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "lsc/common.hpp"

namespace lsc {

// Mono audio clip. Samples are dimensionless amplitudes in [-1, 1]
// after PCM scaling.
struct Waveform {
  Vec<double> samples;
  int sample_rate = 0;

  Index size() const { return samples.size(); }
  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

}  // namespace lsc
