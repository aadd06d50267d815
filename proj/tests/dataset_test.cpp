// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <fstream>
#include <set>

#include "doctest.h"
#include "lsc/dataset/manifest.hpp"
#include "lsc/dataset/split.hpp"
#include "lsc/dataset/synth.hpp"
#include "lsc/dsp/stft.hpp"
#include "lsc/io/wav.hpp"
#include "support/oracles.hpp"

using namespace lsc;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

Waveform zeros_wav(Index n) {
  Waveform w;
  w.sample_rate = 8000;
  w.samples = Vec<double>::Zero(n);
  return w;
}

}  // namespace

TEST_CASE("label strings round-trip") {
  for (EventLabel l : kAllEventLabels) CHECK(event_label_from_string(to_string(l)) == l);
  for (RecordingLabel l : kAllRecordingLabels)
    CHECK(recording_label_from_string(to_string(l)) == l);
  CHECK(to_string(EventLabel::kWC) == "WC");
  CHECK(to_string(RecordingLabel::kPQ) == "PQ");
  CHECK_THROWS_AS(event_label_from_string("X"), ValidationError);
  CHECK_THROWS_AS(recording_label_from_string("wheeze"), ValidationError);
}

TEST_CASE("manifest loads a minimal well-formed corpus") {
  test::TempDir dir("manifest_min");
  write_wav(dir.path / "a.wav", zeros_wav(73600));
  write_file(dir.path / "manifest.json",
             R"({"recordings":[{"id":"a","path":"a.wav","sample_rate":8000,)"
             R"("label":"CAS","events":[{"start":0,"end":8000,"label":"W"}]}]})");
  const DatasetManifest m = load_manifest(dir.path / "manifest.json");
  REQUIRE(m.recordings.size() == 1);
  CHECK(m.recordings[0].id == "a");
  CHECK(m.recordings[0].label == RecordingLabel::kCAS);
  REQUIRE(m.recordings[0].events.size() == 1);
  CHECK(m.recordings[0].events[0].end == 8000);
  CHECK(m.recordings[0].events[0].label == EventLabel::kW);
}

TEST_CASE("manifest validation rejects bad inputs") {
  test::TempDir dir("manifest_bad");
  write_wav(dir.path / "a.wav", zeros_wav(73600));

  SUBCASE("event beyond the audio") {
    write_file(dir.path / "manifest.json",
               R"({"recordings":[{"id":"a","path":"a.wav","sample_rate":8000,)"
               R"("label":"N","events":[{"start":0,"end":80000,"label":"N"}]}]})");
    CHECK_THROWS_AS(load_manifest(dir.path / "manifest.json"), ValidationError);
  }
  SUBCASE("duplicate ids") {
    write_file(dir.path / "manifest.json",
               R"({"recordings":[)"
               R"({"id":"a","path":"a.wav","sample_rate":8000,"label":"N","events":[]},)"
               R"({"id":"a","path":"a.wav","sample_rate":8000,"label":"N","events":[]}]})");
    CHECK_THROWS_AS(load_manifest(dir.path / "manifest.json"), ValidationError);
  }
  SUBCASE("unknown label") {
    write_file(dir.path / "manifest.json",
               R"({"recordings":[{"id":"a","path":"a.wav","sample_rate":8000,)"
               R"("label":"XX","events":[]}]})");
    CHECK_THROWS_AS(load_manifest(dir.path / "manifest.json"), ValidationError);
  }
  SUBCASE("malformed json") {
    write_file(dir.path / "manifest.json", "{not json");
    CHECK_THROWS_AS(load_manifest(dir.path / "manifest.json"), ValidationError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_manifest(dir.path / "nope.json"), ValidationError);
  }
}

TEST_CASE("segment_events slices exactly and allows overlap") {
  RecordingEntry entry;
  entry.id = "x";
  entry.events = {{0, 160, EventLabel::kN}, {160, 320, EventLabel::kW}};
  Vec<double> samples = Vec<double>::LinSpaced(320, 0.0, 319.0);
  auto slices = segment_events(entry, samples);
  REQUIRE(slices.size() == 2);
  CHECK(slices[0].first.size() == 160);
  CHECK(slices[1].first.size() == 160);
  CHECK(slices[0].second == EventLabel::kN);
  CHECK(slices[1].first[0] == 160.0);

  entry.events = {{0, 200, EventLabel::kCC}, {100, 300, EventLabel::kFC}};
  slices = segment_events(entry, samples);
  REQUIRE(slices.size() == 2);
  CHECK(slices[0].first.size() == 200);
  CHECK(slices[1].first.size() == 200);

  entry.events = {};
  CHECK(segment_events(entry, samples).empty());

  entry.events = {{0, 400, EventLabel::kN}};
  CHECK_THROWS_AS(segment_events(entry, samples), ValidationError);
}

TEST_CASE("filter_poor_quality drops exactly the PQ entries") {
  DatasetManifest m;
  for (int i = 0; i < 10; ++i) {
    RecordingEntry e;
    e.id = "r" + std::to_string(i);
    e.label = (i == 3 || i == 7) ? RecordingLabel::kPQ : RecordingLabel::kN;
    m.recordings.push_back(e);
  }
  const DatasetManifest kept = filter_poor_quality(m);
  CHECK(kept.recordings.size() == 8);
  for (const RecordingEntry& e : kept.recordings) CHECK(e.label != RecordingLabel::kPQ);
  CHECK(kept.recordings[3].id == "r4");

  const DatasetManifest again = filter_poor_quality(kept);
  CHECK(again == kept);
}

TEST_CASE("class_counts totals") {
  std::vector<std::string> items = {"N", "N", "W"};
  const auto counts = class_counts(items);
  CHECK(counts.at("N") == 2);
  CHECK(counts.at("W") == 1);
  CHECK(class_counts(std::vector<std::string>{}).empty());
}

TEST_CASE("stratified split counts and determinism") {
  std::vector<std::pair<std::string, std::string>> one_class;
  for (int i = 0; i < 100; ++i) one_class.emplace_back("id" + std::to_string(i), "N");
  const SplitSpec s = stratified_split(one_class, 0.9, 5);
  CHECK(s.train_ids.size() == 90);
  CHECK(s.val_ids.size() == 10);

  const SplitSpec same = stratified_split(one_class, 0.9, 5);
  CHECK(same.train_ids == s.train_ids);
  CHECK(same.val_ids == s.val_ids);

  std::vector<std::pair<std::string, std::string>> two_class;
  for (int i = 0; i < 50; ++i) {
    two_class.emplace_back("a" + std::to_string(i), "N");
    two_class.emplace_back("b" + std::to_string(i), "W");
  }
  const SplitSpec t = stratified_split(two_class, 0.9, 1);
  CHECK(t.train_ids.size() == 90);
  CHECK(t.val_ids.size() == 10);
  Index val_n = 0, val_w = 0;
  for (const std::string& id : t.val_ids) (id[0] == 'a' ? val_n : val_w)++;
  CHECK(val_n == 5);
  CHECK(val_w == 5);

  // disjoint and complete
  std::set<std::string> all(t.train_ids.begin(), t.train_ids.end());
  for (const std::string& id : t.val_ids) CHECK(all.insert(id).second);
  CHECK(all.size() == two_class.size());

  CHECK_THROWS_AS(stratified_split({}, 0.9, 0), ValidationError);
  CHECK_THROWS_AS(stratified_split(one_class, 1.0, 0), ValidationError);
}

TEST_CASE("stratified split val count stays within rounding of the ratio") {
  std::mt19937 rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<std::pair<std::string, std::string>> items;
    std::vector<Index> sizes{1 + static_cast<Index>(rng() % 40),
                             1 + static_cast<Index>(rng() % 40),
                             1 + static_cast<Index>(rng() % 40)};
    const std::vector<std::string> classes{"N", "CAS", "DAS"};
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (Index i = 0; i < sizes[c]; ++i)
        items.emplace_back(classes[c] + "_" + std::to_string(i), classes[c]);
    const SplitSpec s = stratified_split(items, 0.9, static_cast<std::uint32_t>(rep));
    std::map<std::string, Index> val_counts;
    for (const std::string& id : s.val_ids)
      ++val_counts[id.substr(0, id.find('_'))];
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const double exact = static_cast<double>(sizes[c]) * 0.1;
      const Index got = val_counts.count(classes[c]) ? val_counts[classes[c]] : 0;
      CHECK(got >= static_cast<Index>(std::floor(exact)));
      CHECK(got <= static_cast<Index>(std::ceil(exact)));
      CHECK(got <= sizes[c] - 1);
    }
  }
}

TEST_CASE("synthetic corpus generation is deterministic and complete") {
  test::TempDir dir("synth_det");
  const DatasetManifest a =
      synth_generate((dir.path / "a").string(), 2, 9, SynthLevel::kRecording);
  CHECK(a.recordings.size() == 8);
  std::map<RecordingLabel, int> per_label;
  for (const RecordingEntry& e : a.recordings) {
    ++per_label[e.label];
    CHECK(e.label != RecordingLabel::kPQ);
    const WavInfo info = wav_info(a.audio_path(e));
    CHECK(info.sample_rate == 8000);
    CHECK(info.num_samples >= 73600);
  }
  CHECK(per_label.size() == 4);
  for (const auto& [label, n] : per_label) CHECK(n == 2);

  const DatasetManifest b =
      synth_generate((dir.path / "b").string(), 2, 9, SynthLevel::kRecording);
  for (std::size_t i = 0; i < a.recordings.size(); ++i) {
    CHECK(slurp(a.audio_path(a.recordings[i])) == slurp(b.audio_path(b.recordings[i])));
  }

  const DatasetManifest c =
      synth_generate((dir.path / "c").string(), 2, 10, SynthLevel::kRecording);
  CHECK(slurp(a.audio_path(a.recordings[0])) != slurp(c.audio_path(c.recordings[0])));

  // round-trips losslessly through its own manifest file
  const DatasetManifest reloaded = load_manifest(dir.path / "a" / "manifest.json");
  CHECK(reloaded == a);
}

TEST_CASE("event-level synthesis annotates events") {
  test::TempDir dir("synth_event");
  const DatasetManifest m =
      synth_generate((dir.path / "e").string(), 1, 4, SynthLevel::kEvent);
  std::set<EventLabel> seen;
  for (const RecordingEntry& e : m.recordings) {
    CHECK(!e.events.empty());
    for (const EventRecord& ev : e.events) {
      CHECK(ev.start < ev.end);
      seen.insert(ev.label);
    }
  }
  CHECK(seen.size() >= 4);
}

TEST_CASE("generated classes have distinct spectral texture") {
  test::TempDir dir("synth_spec");
  const DatasetManifest m =
      synth_generate((dir.path / "s").string(), 1, 21, SynthLevel::kRecording);
  // mean per-frame share of the strongest bin, over event-covered frames only
  const auto concentration = [&](RecordingLabel want) {
    for (const RecordingEntry& e : m.recordings) {
      if (e.label != want) continue;
      const Waveform w = read_wav(m.audio_path(e));
      const Spectrogram s = stft_magnitude(w);
      const StftConfig cfg;
      const Index hop = cfg.hop_samples(w.sample_rate);
      const Index win = cfg.window_samples(w.sample_rate);
      double acc = 0.0;
      Index used = 0;
      for (Index f = 0; f < s.n_frames(); ++f) {
        const Index lo = f * hop;
        const Index hi = lo + win;
        const bool inside = std::any_of(e.events.begin(), e.events.end(),
                                        [&](const EventRecord& ev) {
                                          return lo >= ev.start && hi <= ev.end;
                                        });
        if (!inside) continue;
        const double total = s.values.col(f).array().square().sum();
        const double peak = s.values.col(f).maxCoeff();
        if (total > 0.0) acc += peak * peak / total;
        ++used;
      }
      REQUIRE(used > 0);
      return acc / static_cast<double>(used);
    }
    REQUIRE(false);
    return 0.0;
  };
  const double tonal = concentration(RecordingLabel::kCAS);
  const double broadband = concentration(RecordingLabel::kN);
  CHECK(tonal > 1.5 * broadband);
}
