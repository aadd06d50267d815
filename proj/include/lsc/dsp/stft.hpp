// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "lsc/common.hpp"
#include "lsc/dsp/waveform.hpp"

namespace lsc {

struct StftConfig {
  double window_seconds = 0.02;
  double hop_seconds = 0.01;
  Index fft_size = 256;
  bool periodic_window = true;
  bool center = false;

  Index window_samples(int sample_rate) const;
  Index hop_samples(int sample_rate) const;
  void validate(int sample_rate) const;
};

// Magnitude (or mel-power) time-frequency grid, rows = frequency, cols = frames.
struct Spectrogram {
  Mat<double> values;
  double bin_hz = 0.0;
  double frame_hop_s = 0.0;

  Index n_bins() const { return values.rows(); }
  Index n_frames() const { return values.cols(); }
};

// Frames with hop, windows, zero-pads to fft_size, keeps bins 0..fft_size/2.
// frames = floor((L - win) / hop) + 1, no padding on either side.
Spectrogram stft_magnitude(const Waveform& w, const StftConfig& cfg = {});

}  // namespace lsc
