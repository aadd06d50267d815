// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>
#include <vector>

#include "lsc/common.hpp"

namespace lsc {

// Challenge tasks: event-level (1-x) or recording-level (2-x), binary
// Normal-vs-Adventitious (x-1) or full multiclass (x-2).
enum class Task { k11, k12, k21, k22 };

constexpr Task kAllTasks[] = {Task::k11, Task::k12, Task::k21, Task::k22};

std::string task_id(Task t);                    // "1-1", "1-2", "2-1", "2-2"
Task task_from_id(const std::string& id);
bool task_event_level(Task t);
const std::vector<std::string>& task_classes(Task t);       // Normal first
const std::vector<std::string>& task_adventitious(Task t);  // subset of classes

struct ConfusionMatrix {
  std::vector<std::string> labels;
  Mat<Index> counts;  // rows = true, cols = predicted

  Index label_index(const std::string& label) const;
  Index total() const { return counts.sum(); }
};

ConfusionMatrix confusion_from_predictions(const std::vector<std::string>& true_labels,
                                           const std::vector<std::string>& predicted,
                                           Task task);

// SE: diagonal hits among adventitious classes over all adventitious rows.
// Throws when no adventitious samples exist.
double sensitivity(const ConfusionMatrix& cm, Task task);

// SP: counts[N][N] / row_total(N). Throws when no Normal samples exist.
double specificity(const ConfusionMatrix& cm);

}  // namespace lsc
