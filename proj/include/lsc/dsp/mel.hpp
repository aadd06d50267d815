// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "lsc/common.hpp"
#include "lsc/dsp/stft.hpp"
#include "lsc/dsp/waveform.hpp"

namespace lsc {

struct MelConfig {
  Index n_mels = 64;
  double f_min = 0.0;
  double f_max = 4000.0;

  void validate(int sample_rate) const;
};

// HTK scale: m = 2595 log10(1 + f/700).
double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangular filters, peaks equally spaced on the mel axis, peak value 1.
// Rows = filters, cols = fft bins 0..fft_size/2. Throws if any filter
// collapses to an empty bin set.
Mat<double> mel_filterbank(const MelConfig& cfg, Index fft_size, int sample_rate);

// filterbank * power spectrogram (|stft|^2).
Spectrogram mel_spectrogram(const Waveform& w, const StftConfig& stft_cfg = {},
                            const MelConfig& mel_cfg = {});

}  // namespace lsc
