// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/dsp/stft.hpp"

#include <cmath>
#include <complex>

#include "lsc/dsp/fft.hpp"
#include "lsc/dsp/window.hpp"

namespace lsc {

Index StftConfig::window_samples(int sample_rate) const {
  return static_cast<Index>(std::llround(window_seconds * sample_rate));
}

Index StftConfig::hop_samples(int sample_rate) const {
  return static_cast<Index>(std::llround(hop_seconds * sample_rate));
}

void StftConfig::validate(int sample_rate) const {
  if (sample_rate <= 0)
    throw ValidationError("stft: sample_rate must be positive, got " +
                          std::to_string(sample_rate));
  const Index win = window_samples(sample_rate);
  const Index hop = hop_samples(sample_rate);
  if (win < 2) throw ValidationError("stft: window shorter than 2 samples");
  if (hop < 1 || hop > win)
    throw ValidationError("stft: hop must be in [1 sample, window length]");
  if (fft_size < win)
    throw ValidationError("stft: fft_size " + std::to_string(fft_size) +
                          " smaller than window " + std::to_string(win));
  if (fft_size <= 0 || (fft_size & (fft_size - 1)) != 0)
    throw ValidationError("stft: fft_size must be a power of two, got " +
                          std::to_string(fft_size));
  if (center) throw ValidationError("stft: centered framing is not supported");
}

Spectrogram stft_magnitude(const Waveform& w, const StftConfig& cfg) {
  cfg.validate(w.sample_rate);
  const Index win = cfg.window_samples(w.sample_rate);
  const Index hop = cfg.hop_samples(w.sample_rate);
  const Index len = w.size();
  if (len < win)
    throw ValidationError("stft: waveform of " + std::to_string(len) +
                          " samples shorter than window " + std::to_string(win));

  const Vec<double> window = hann_window<double>(win, cfg.periodic_window);
  const Index n_frames = (len - win) / hop + 1;
  const Index n_bins = cfg.fft_size / 2 + 1;

  Spectrogram out;
  out.values.setZero(n_bins, n_frames);
  out.bin_hz = static_cast<double>(w.sample_rate) / static_cast<double>(cfg.fft_size);
  out.frame_hop_s = static_cast<double>(hop) / static_cast<double>(w.sample_rate);

  CVec<double> buf(cfg.fft_size);
  for (Index f = 0; f < n_frames; ++f) {
    buf.setZero();
    const Index start = f * hop;
    for (Index k = 0; k < win; ++k) buf[k] = w.samples[start + k] * window[k];
    detail::fft_in_place(buf, false);
    for (Index b = 0; b < n_bins; ++b) out.values(b, f) = std::abs(buf[b]);
  }
  return out;
}

}  // namespace lsc
