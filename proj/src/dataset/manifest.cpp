// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/dataset/manifest.hpp"

#include <fstream>
#include <iostream>
#include <set>

#include <nlohmann/json.hpp>
#include "lsc/io/wav.hpp"

namespace lsc {

namespace {

constexpr int kRequiredRate = 8000;
constexpr double kMinSeconds = 9.2;

void validate_entry_structure(const RecordingEntry& e) {
  if (e.id.empty()) throw ValidationError("manifest: empty recording id");
  if (e.path.empty())
    throw ValidationError("manifest: recording '" + e.id + "' has empty path");
  if (e.sample_rate != kRequiredRate)
    throw ValidationError("manifest: recording '" + e.id + "' has sample rate " +
                          std::to_string(e.sample_rate) + ", only 8000 Hz is supported");
  for (const EventRecord& ev : e.events) {
    if (ev.start < 0 || ev.start >= ev.end)
      throw ValidationError("manifest: recording '" + e.id + "' has invalid event [" +
                            std::to_string(ev.start) + ", " + std::to_string(ev.end) + ")");
  }
}

}  // namespace

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open manifest: " + path.string());

  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("manifest parse error: " + std::string(e.what()));
  }

  DatasetManifest manifest;
  manifest.root = path.has_parent_path() ? path.parent_path() : ".";
  try {
    for (const auto& rec : doc.at("recordings")) {
      RecordingEntry e;
      e.id = rec.at("id").get<std::string>();
      e.path = rec.at("path").get<std::string>();
      e.sample_rate = rec.at("sample_rate").get<int>();
      e.label = recording_label_from_string(rec.at("label").get<std::string>());
      if (rec.contains("events")) {
        for (const auto& ev : rec.at("events")) {
          EventRecord r;
          r.start = ev.at("start").get<Index>();
          r.end = ev.at("end").get<Index>();
          r.label = event_label_from_string(ev.at("label").get<std::string>());
          e.events.push_back(r);
        }
      }
      manifest.recordings.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("manifest schema error: " + std::string(e.what()));
  }

  if (manifest.recordings.empty())
    throw ValidationError("manifest: no recordings");

  std::set<std::string> seen;
  for (RecordingEntry& e : manifest.recordings) {
    validate_entry_structure(e);
    if (!seen.insert(e.id).second)
      throw ValidationError("manifest: duplicate recording id '" + e.id + "'");

    WavInfo info = wav_info(manifest.audio_path(e));
    if (info.sample_rate != e.sample_rate)
      throw ValidationError("manifest: recording '" + e.id + "' declares " +
                            std::to_string(e.sample_rate) + " Hz but wav file has " +
                            std::to_string(info.sample_rate) + " Hz");
    e.num_samples = info.num_samples;
    for (const EventRecord& ev : e.events) {
      if (ev.end > e.num_samples)
        throw ValidationError("manifest: recording '" + e.id + "' event ends at sample " +
                              std::to_string(ev.end) + " but the wav has only " +
                              std::to_string(e.num_samples) + " samples");
    }
    if (static_cast<double>(e.num_samples) < kMinSeconds * e.sample_rate)
      std::cerr << "warning: recording '" << e.id << "' is shorter than 9.2 s ("
                << static_cast<double>(e.num_samples) / e.sample_rate << " s)\n";
  }
  return manifest;
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  nlohmann::json recs = nlohmann::json::array();
  for (const RecordingEntry& e : manifest.recordings) {
    nlohmann::json events = nlohmann::json::array();
    for (const EventRecord& ev : e.events)
      events.push_back({{"start", ev.start}, {"end", ev.end}, {"label", to_string(ev.label)}});
    recs.push_back({{"id", e.id},
                    {"path", e.path},
                    {"sample_rate", e.sample_rate},
                    {"label", to_string(e.label)},
                    {"events", std::move(events)}});
  }
  nlohmann::json doc = {{"recordings", std::move(recs)}};
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot create manifest: " + path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw ValidationError("manifest write failed: " + path.string());
}

std::vector<std::pair<Vec<double>, EventLabel>> segment_events(
    const RecordingEntry& entry, const Vec<double>& samples) {
  if (entry.num_samples > 0 && samples.size() != entry.num_samples)
    throw ValidationError("segment_events: recording '" + entry.id + "' has " +
                          std::to_string(samples.size()) + " samples but the manifest expects " +
                          std::to_string(entry.num_samples));
  std::vector<std::pair<Vec<double>, EventLabel>> out;
  out.reserve(entry.events.size());
  for (const EventRecord& ev : entry.events) {
    if (ev.end > samples.size())
      throw ValidationError("segment_events: event out of bounds in recording '" +
                            entry.id + "'");
    out.emplace_back(samples.segment(ev.start, ev.end - ev.start), ev.label);
  }
  return out;
}

DatasetManifest filter_poor_quality(const DatasetManifest& manifest) {
  DatasetManifest out;
  out.root = manifest.root;
  for (const RecordingEntry& e : manifest.recordings)
    if (e.label != RecordingLabel::kPQ) out.recordings.push_back(e);
  return out;
}

}  // namespace lsc
