// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <string>

#include "lsc/dataset/manifest.hpp"

namespace lsc {

enum class SynthLevel { kEvent, kRecording };

SynthLevel synth_level_from_string(const std::string& s);

// Writes n_per_class recordings per class (4 recording classes or 7 event
// classes, PQ never generated) as 8 kHz WAVs plus manifest.json under
// out_dir. Every recording carries three annotated events whose signal
// signature matches its class:
//   N   band-limited breath noise, 100-600 Hz, slow envelope
//   R/W/S (CAS-family)  amplitude-modulated tone sweeps, 150-300 /
//         300-800 / 800-1600 Hz
//   FC/CC (DAS-family)  breath noise plus 5-8 / 9-15 ms transient bursts
//   WC (CD)  sweep and bursts superposed
// Deterministic: equal seeds give byte-identical WAVs.
DatasetManifest synth_generate(const std::string& out_dir, Index n_per_class,
                               std::uint32_t seed, SynthLevel level);

}  // namespace lsc
