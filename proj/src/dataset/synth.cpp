// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/dataset/synth.hpp"

#include <cmath>
#include <complex>
#include <filesystem>
#include <random>

#include "lsc/dsp/fft.hpp"
#include "lsc/io/wav.hpp"

namespace lsc {

namespace {

constexpr int kRate = 8000;
constexpr double kTwoPi = 2.0 * EIGEN_PI;

double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Gaussian noise band-passed with an FFT brick wall, unit RMS.
Vec<double> band_noise(std::mt19937& rng, Index n, double lo_hz, double hi_hz) {
  Index size = 1;
  while (size < n) size <<= 1;
  CVec<double> spec(size);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Index i = 0; i < size; ++i) spec[i] = std::complex<double>(gauss(rng), 0.0);
  detail::fft_in_place(spec, false);
  for (Index k = 0; k <= size / 2; ++k) {
    const double f = static_cast<double>(k) * kRate / static_cast<double>(size);
    if (f < lo_hz || f > hi_hz) {
      spec[k] = 0.0;
      if (k > 0 && k < size) spec[size - k] = 0.0;
    }
  }
  detail::fft_in_place(spec, true);
  Vec<double> out(n);
  for (Index i = 0; i < n; ++i) out[i] = spec[i].real();
  const double rms = std::sqrt(out.squaredNorm() / static_cast<double>(n));
  if (rms > 0.0) out /= rms;
  return out;
}

// Linear chirp between two band edges with sinusoidal amplitude modulation.
void add_tone_sweep(Vec<double>& w, std::mt19937& rng, Index start, Index len,
                    double band_lo, double band_hi, double amp) {
  const double span = band_hi - band_lo;
  double f0 = band_lo + uniform(rng, 0.0, 0.25) * span;
  double f1 = band_hi - uniform(rng, 0.0, 0.25) * span;
  if (uniform(rng, 0.0, 1.0) < 0.5) std::swap(f0, f1);
  const double am_hz = uniform(rng, 4.0, 8.0);
  const double phase0 = uniform(rng, 0.0, kTwoPi);
  const double am_phase = uniform(rng, 0.0, kTwoPi);
  const double dur = static_cast<double>(len) / kRate;
  for (Index i = 0; i < len; ++i) {
    const double t = static_cast<double>(i) / kRate;
    const double phase = kTwoPi * (f0 * t + 0.5 * (f1 - f0) / dur * t * t) + phase0;
    const double am = 0.6 + 0.4 * std::sin(kTwoPi * am_hz * t + am_phase);
    // soft edges so the event does not click
    const double edge = std::min({1.0, static_cast<double>(i) / (0.02 * kRate),
                                  static_cast<double>(len - 1 - i) / (0.02 * kRate)});
    w[start + i] += amp * am * std::max(edge, 0.0) * std::sin(phase);
  }
}

// Damped-sine transients every 30-60 ms.
void add_bursts(Vec<double>& w, std::mt19937& rng, Index start, Index len, double min_ms,
                double max_ms, double f_lo, double f_hi, double amp) {
  Index t = start + static_cast<Index>(uniform(rng, 0.0, 0.02) * kRate);
  const Index end = start + len;
  while (true) {
    const Index burst = static_cast<Index>(uniform(rng, min_ms, max_ms) * 1e-3 * kRate);
    if (t + burst >= end) break;
    const double f = uniform(rng, f_lo, f_hi);
    const double phase = uniform(rng, 0.0, kTwoPi);
    const double tau = static_cast<double>(burst) / 3.0;
    const double attack = 0.5e-3 * kRate;
    for (Index i = 0; i < burst; ++i) {
      const double ramp = std::min(1.0, static_cast<double>(i) / attack);
      w[t + i] += amp * ramp * std::exp(-static_cast<double>(i) / tau) *
                  std::sin(kTwoPi * f * static_cast<double>(i) / kRate + phase);
    }
    t += burst + static_cast<Index>(uniform(rng, 0.030, 0.060) * kRate);
  }
}

struct EventBand {
  double lo, hi;
};

// Three non-overlapping events, one per third of the recording.
std::vector<EventRecord> place_events(std::mt19937& rng, Index n_samples,
                                      EventLabel label) {
  std::vector<EventRecord> events;
  const Index third = n_samples / 3;
  for (int k = 0; k < 3; ++k) {
    const Index dur = static_cast<Index>(uniform(rng, 1.2, 2.0) * kRate);
    const Index margin = static_cast<Index>(0.1 * kRate);
    const Index lo = k * third + margin;
    const Index hi = (k + 1) * third - margin - dur;
    const Index start = lo + static_cast<Index>(uniform(rng, 0.0, 1.0) *
                                                static_cast<double>(hi - lo));
    events.push_back({start, start + dur, label});
  }
  return events;
}

void render_event(Vec<double>& w, std::mt19937& rng, const EventRecord& ev) {
  const Index len = ev.end - ev.start;
  switch (ev.label) {
    case EventLabel::kN:
      break;  // the breath background is the event
    case EventLabel::kR:
      add_tone_sweep(w, rng, ev.start, len, 150.0, 300.0, 0.6);
      break;
    case EventLabel::kW:
      add_tone_sweep(w, rng, ev.start, len, 300.0, 800.0, 0.6);
      break;
    case EventLabel::kS:
      add_tone_sweep(w, rng, ev.start, len, 800.0, 1600.0, 0.6);
      break;
    case EventLabel::kFC:
      add_bursts(w, rng, ev.start, len, 5.0, 8.0, 600.0, 1200.0, 0.6);
      break;
    case EventLabel::kCC:
      add_bursts(w, rng, ev.start, len, 9.0, 15.0, 200.0, 600.0, 0.6);
      break;
    case EventLabel::kWC:
      add_tone_sweep(w, rng, ev.start, len, 300.0, 800.0, 0.45);
      add_bursts(w, rng, ev.start, len, 5.0, 8.0, 600.0, 1200.0, 0.45);
      break;
  }
}

RecordingLabel recording_label_for(EventLabel e) {
  switch (e) {
    case EventLabel::kN: return RecordingLabel::kN;
    case EventLabel::kR:
    case EventLabel::kW:
    case EventLabel::kS: return RecordingLabel::kCAS;
    case EventLabel::kFC:
    case EventLabel::kCC: return RecordingLabel::kDAS;
    case EventLabel::kWC: return RecordingLabel::kCD;
  }
  throw ValidationError("synth: bad event label");
}

// Event family cycled across a recording class's clips so multiclass
// event training sees every label.
EventLabel event_label_for(RecordingLabel r, Index clip_index) {
  static const EventLabel cas[] = {EventLabel::kW, EventLabel::kR, EventLabel::kS};
  static const EventLabel das[] = {EventLabel::kFC, EventLabel::kCC};
  switch (r) {
    case RecordingLabel::kN: return EventLabel::kN;
    case RecordingLabel::kCAS: return cas[clip_index % 3];
    case RecordingLabel::kDAS: return das[clip_index % 2];
    case RecordingLabel::kCD: return EventLabel::kWC;
    case RecordingLabel::kPQ: break;
  }
  throw ValidationError("synth: PQ clips are never generated");
}

Vec<double> render_recording(std::mt19937& rng, Index n_samples,
                             std::vector<EventRecord>& events, EventLabel label) {
  Vec<double> w = band_noise(rng, n_samples, 100.0, 600.0);
  const double breath_hz = uniform(rng, 0.2, 0.3);
  const double breath_phase = uniform(rng, 0.0, kTwoPi);
  for (Index i = 0; i < n_samples; ++i) {
    const double t = static_cast<double>(i) / kRate;
    w[i] *= 0.12 * (0.55 + 0.45 * std::sin(kTwoPi * breath_hz * t + breath_phase));
  }
  events = place_events(rng, n_samples, label);
  for (const EventRecord& ev : events) render_event(w, rng, ev);
  const double peak = w.cwiseAbs().maxCoeff();
  if (peak > 0.95) w *= 0.95 / peak;
  return w;
}

}  // namespace

SynthLevel synth_level_from_string(const std::string& s) {
  if (s == "event") return SynthLevel::kEvent;
  if (s == "recording") return SynthLevel::kRecording;
  throw ValidationError("unknown synth level '" + s + "', expected event or recording");
}

DatasetManifest synth_generate(const std::string& out_dir, Index n_per_class,
                               std::uint32_t seed, SynthLevel level) {
  if (n_per_class < 1) throw ValidationError("synth: n_per_class must be >= 1");
  std::filesystem::create_directories(out_dir);

  // (recording label, event label) per clip class
  std::vector<std::pair<RecordingLabel, EventLabel>> clip_classes;
  if (level == SynthLevel::kRecording) {
    for (RecordingLabel r : {RecordingLabel::kN, RecordingLabel::kCAS,
                             RecordingLabel::kDAS, RecordingLabel::kCD})
      clip_classes.emplace_back(r, EventLabel::kN);  // event label picked per clip below
  } else {
    for (EventLabel e : kAllEventLabels) clip_classes.emplace_back(recording_label_for(e), e);
  }

  DatasetManifest manifest;
  manifest.root = out_dir;
  std::uint32_t clip_counter = 0;
  for (const auto& [rec_label, fixed_event] : clip_classes) {
    const std::string class_tag =
        level == SynthLevel::kRecording ? to_string(rec_label) : to_string(fixed_event);
    for (Index i = 0; i < n_per_class; ++i) {
      std::seed_seq seq{seed, clip_counter};
      std::mt19937 rng(seq);
      ++clip_counter;

      const EventLabel ev_label =
          level == SynthLevel::kRecording ? event_label_for(rec_label, i) : fixed_event;
      const Index n_samples =
          static_cast<Index>(9.2 * kRate) +
          static_cast<Index>(uniform(rng, 0.0, 0.8) * kRate);

      RecordingEntry entry;
      entry.id = class_tag + "_" + std::to_string(i);
      entry.path = entry.id + ".wav";
      entry.sample_rate = kRate;
      entry.label = rec_label;
      const Vec<double> samples =
          render_recording(rng, n_samples, entry.events, ev_label);
      entry.num_samples = n_samples;
      write_wav(manifest.audio_path(entry).string(), {samples, kRate});
      manifest.recordings.push_back(std::move(entry));
    }
  }
  save_manifest(std::filesystem::path(out_dir) / "manifest.json", manifest);
  return manifest;
}

}  // namespace lsc
