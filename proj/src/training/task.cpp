// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/training/task.hpp"

namespace lsc {

std::string task_class_for_event(Task task, EventLabel label) {
  if (!task_event_level(task))
    throw ValidationError("task " + task_id(task) + " does not classify events");
  if (task == Task::k12) return to_string(label);
  return label == EventLabel::kN ? "N" : "Adventitious";
}

std::string task_class_for_recording(Task task, RecordingLabel label) {
  if (task_event_level(task))
    throw ValidationError("task " + task_id(task) + " does not classify recordings");
  if (label == RecordingLabel::kPQ)
    throw ValidationError("task " + task_id(task) +
                          " cannot use PQ recordings; filter them first");
  if (task == Task::k22) return to_string(label);
  return label == RecordingLabel::kN ? "N" : "Adventitious";
}

std::vector<TaskSample> collect_task_samples(const DatasetManifest& manifest, Task task) {
  std::vector<TaskSample> samples;
  for (const RecordingEntry& rec : manifest.recordings) {
    if (task_event_level(task)) {
      for (std::size_t k = 0; k < rec.events.size(); ++k) {
        TaskSample s;
        s.key = rec.id + "#" + std::to_string(k);
        s.recording_id = rec.id;
        s.event_index = static_cast<Index>(k);
        s.task_class = task_class_for_event(task, rec.events[k].label);
        samples.push_back(std::move(s));
      }
    } else {
      TaskSample s;
      s.key = rec.id;
      s.recording_id = rec.id;
      s.task_class = task_class_for_recording(task, rec.label);
      samples.push_back(std::move(s));
    }
  }
  if (samples.empty())
    throw ValidationError("task " + task_id(task) + ": manifest yields no samples");
  return samples;
}

}  // namespace lsc
