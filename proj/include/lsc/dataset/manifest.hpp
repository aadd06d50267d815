// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lsc/dataset/labels.hpp"
#include "lsc/dsp/waveform.hpp"

namespace lsc {

// Annotated respiratory event inside a recording, [start, end) in samples.
struct EventRecord {
  Index start = 0;
  Index end = 0;
  EventLabel label = EventLabel::kN;

  bool operator==(const EventRecord&) const = default;
};

struct RecordingEntry {
  std::string id;
  std::string path;  // relative to the manifest file
  int sample_rate = 8000;
  RecordingLabel label = RecordingLabel::kN;
  std::vector<EventRecord> events;
  // Filled from the wav header when loading; not part of the JSON schema.
  Index num_samples = 0;

  bool operator==(const RecordingEntry& o) const {
    return id == o.id && path == o.path && sample_rate == o.sample_rate &&
           label == o.label && events == o.events;
  }
};

struct DatasetManifest {
  std::vector<RecordingEntry> recordings;
  // Directory the recording paths are relative to.
  std::filesystem::path root;

  bool operator==(const DatasetManifest& o) const {
    return recordings == o.recordings;
  }
  std::filesystem::path audio_path(const RecordingEntry& e) const {
    return root / e.path;
  }
};

// Parses and validates a manifest: unique ids, known labels, 8 kHz rate,
// events within the referenced wav files. Recordings shorter than 9.2 s
// get a warning on stderr, not an error.
DatasetManifest load_manifest(const std::filesystem::path& path);

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

// Cuts one slice per annotated event. Slices may overlap.
std::vector<std::pair<Vec<double>, EventLabel>> segment_events(
    const RecordingEntry& entry, const Vec<double>& samples);

// Drops recordings labeled PQ; order of the rest is preserved.
DatasetManifest filter_poor_quality(const DatasetManifest& manifest);

template <typename Label>
std::map<Label, Index> class_counts(const std::vector<Label>& items) {
  std::map<Label, Index> counts;
  for (const Label& l : items) ++counts[l];
  return counts;
}

}  // namespace lsc
