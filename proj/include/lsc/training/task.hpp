// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>
#include <vector>

#include "lsc/dataset/manifest.hpp"
#include "lsc/metrics/confusion.hpp"

namespace lsc {

// One classification unit: a whole recording (tasks 2-x) or a single
// annotated event (tasks 1-x).
struct TaskSample {
  std::string key;           // unique id: recording id, or id#eventindex
  std::string recording_id;
  Index event_index = -1;    // -1 means the whole recording
  std::string task_class;
};

// Raw label -> task class. Tasks 2-x reject PQ; callers filter first.
std::string task_class_for_event(Task task, EventLabel label);
std::string task_class_for_recording(Task task, RecordingLabel label);

// Expands a manifest into task samples in manifest order.
std::vector<TaskSample> collect_task_samples(const DatasetManifest& manifest, Task task);

}  // namespace lsc
