// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/dataset/labels.hpp"

namespace lsc {

std::string to_string(EventLabel label) {
  switch (label) {
    case EventLabel::kN: return "N";
    case EventLabel::kR: return "R";
    case EventLabel::kW: return "W";
    case EventLabel::kS: return "S";
    case EventLabel::kCC: return "CC";
    case EventLabel::kFC: return "FC";
    case EventLabel::kWC: return "WC";
  }
  throw ValidationError("invalid EventLabel value");
}

std::string to_string(RecordingLabel label) {
  switch (label) {
    case RecordingLabel::kN: return "N";
    case RecordingLabel::kCAS: return "CAS";
    case RecordingLabel::kDAS: return "DAS";
    case RecordingLabel::kCD: return "CD";
    case RecordingLabel::kPQ: return "PQ";
  }
  throw ValidationError("invalid RecordingLabel value");
}

EventLabel event_label_from_string(const std::string& s) {
  for (EventLabel l : kAllEventLabels)
    if (to_string(l) == s) return l;
  throw ValidationError("unknown event label: '" + s + "'");
}

RecordingLabel recording_label_from_string(const std::string& s) {
  for (RecordingLabel l : kAllRecordingLabels)
    if (to_string(l) == s) return l;
  throw ValidationError("unknown recording label: '" + s + "'");
}

}  // namespace lsc
