// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/dsp/mel.hpp"

#include <cmath>

namespace lsc {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

void MelConfig::validate(int sample_rate) const {
  if (n_mels < 1) throw ValidationError("mel: n_mels must be >= 1");
  if (!(f_min >= 0.0 && f_min < f_max))
    throw ValidationError("mel: need 0 <= f_min < f_max");
  if (f_max > sample_rate / 2.0 + 1e-9)
    throw ValidationError("mel: f_max " + std::to_string(f_max) + " above Nyquist " +
                          std::to_string(sample_rate / 2.0));
}

Mat<double> mel_filterbank(const MelConfig& cfg, Index fft_size, int sample_rate) {
  cfg.validate(sample_rate);
  if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0)
    throw ValidationError("mel: fft_size must be a power of two");

  const Index n_bins = fft_size / 2 + 1;
  const double mel_lo = hz_to_mel(cfg.f_min);
  const double mel_hi = hz_to_mel(cfg.f_max);

  // corner frequencies: n_mels peaks plus the two outer edges
  Vec<double> corner_hz(cfg.n_mels + 2);
  for (Index i = 0; i < cfg.n_mels + 2; ++i) {
    const double m = mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                  static_cast<double>(cfg.n_mels + 1);
    corner_hz[i] = mel_to_hz(m);
  }

  Mat<double> bank = Mat<double>::Zero(cfg.n_mels, n_bins);
  for (Index m = 0; m < cfg.n_mels; ++m) {
    const double lo = corner_hz[m];
    const double peak = corner_hz[m + 1];
    const double hi = corner_hz[m + 2];
    for (Index b = 0; b < n_bins; ++b) {
      const double f = static_cast<double>(b) * sample_rate / static_cast<double>(fft_size);
      double v = 0.0;
      if (f > lo && f < peak)
        v = (f - lo) / (peak - lo);
      else if (f >= peak && f < hi)
        v = (hi - f) / (hi - peak);
      bank(m, b) = v;
    }
    const double top = bank.row(m).maxCoeff();
    if (top <= 0.0)
      throw ValidationError("mel: filter " + std::to_string(m) +
                            " covers no fft bin; lower n_mels or raise fft_size");
    bank.row(m) /= top;
  }
  return bank;
}

Spectrogram mel_spectrogram(const Waveform& w, const StftConfig& stft_cfg,
                            const MelConfig& mel_cfg) {
  const Spectrogram mag = stft_magnitude(w, stft_cfg);
  const Mat<double> bank = mel_filterbank(mel_cfg, stft_cfg.fft_size, w.sample_rate);

  Spectrogram out;
  out.values = bank * mag.values.array().square().matrix();
  out.bin_hz = 0.0;  // rows are mel-spaced, not uniform in Hz
  out.frame_hop_s = mag.frame_hop_s;
  return out;
}

}  // namespace lsc
