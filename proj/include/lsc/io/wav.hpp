// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "lsc/dsp/waveform.hpp"

namespace lsc {

struct WavInfo {
  int sample_rate = 0;
  Index num_samples = 0;
};

// Header-only probe; does not load sample data.
WavInfo wav_info(const std::filesystem::path& path);

// Reads a RIFF PCM wav file: 16-bit signed little-endian, mono.
// Samples are scaled to [-1, 1) by dividing by 32768.
Waveform read_wav(const std::filesystem::path& path);

// Writes 16-bit PCM mono; samples are clamped to [-1, 1] and rounded.
void write_wav(const std::filesystem::path& path, const Waveform& w);

}  // namespace lsc
