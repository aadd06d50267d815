// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <array>
#include <string>

#include "lsc/common.hpp"

namespace lsc {

// Per-event annotation: normal, rhonchi, wheeze, stridor, coarse crackle,
// fine crackle, wheeze & crackle.
enum class EventLabel { kN, kR, kW, kS, kCC, kFC, kWC };

// Per-recording annotation; kPQ marks recordings too noisy to score.
enum class RecordingLabel { kN, kCAS, kDAS, kCD, kPQ };

inline constexpr std::array<EventLabel, 7> kAllEventLabels = {
    EventLabel::kN,  EventLabel::kR,  EventLabel::kW, EventLabel::kS,
    EventLabel::kCC, EventLabel::kFC, EventLabel::kWC};

inline constexpr std::array<RecordingLabel, 5> kAllRecordingLabels = {
    RecordingLabel::kN, RecordingLabel::kCAS, RecordingLabel::kDAS,
    RecordingLabel::kCD, RecordingLabel::kPQ};

std::string to_string(EventLabel label);
std::string to_string(RecordingLabel label);

EventLabel event_label_from_string(const std::string& s);
RecordingLabel recording_label_from_string(const std::string& s);

}  // namespace lsc
