// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/metrics/confusion.hpp"

#include <algorithm>

namespace lsc {

std::string task_id(Task t) {
  switch (t) {
    case Task::k11: return "1-1";
    case Task::k12: return "1-2";
    case Task::k21: return "2-1";
    case Task::k22: return "2-2";
  }
  throw ValidationError("task_id: bad task");
}

Task task_from_id(const std::string& id) {
  for (Task t : kAllTasks)
    if (task_id(t) == id) return t;
  throw ValidationError("unknown task '" + id + "', expected 1-1, 1-2, 2-1 or 2-2");
}

bool task_event_level(Task t) { return t == Task::k11 || t == Task::k12; }

const std::vector<std::string>& task_classes(Task t) {
  static const std::vector<std::string> k11{"N", "Adventitious"};
  static const std::vector<std::string> k12{"N", "R", "W", "S", "CC", "FC", "WC"};
  static const std::vector<std::string> k21{"N", "Adventitious"};
  static const std::vector<std::string> k22{"N", "CAS", "DAS", "CD"};
  switch (t) {
    case Task::k11: return k11;
    case Task::k12: return k12;
    case Task::k21: return k21;
    case Task::k22: return k22;
  }
  throw ValidationError("task_classes: bad task");
}

const std::vector<std::string>& task_adventitious(Task t) {
  static const std::vector<std::string> binary{"Adventitious"};
  static const std::vector<std::string> k12{"R", "W", "S", "CC", "FC", "WC"};
  static const std::vector<std::string> k22{"CAS", "DAS", "CD"};
  switch (t) {
    case Task::k11:
    case Task::k21: return binary;
    case Task::k12: return k12;
    case Task::k22: return k22;
  }
  throw ValidationError("task_adventitious: bad task");
}

Index ConfusionMatrix::label_index(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw ValidationError("label '" + label + "' not in task");
  return static_cast<Index>(it - labels.begin());
}

ConfusionMatrix confusion_from_predictions(const std::vector<std::string>& true_labels,
                                           const std::vector<std::string>& predicted,
                                           Task task) {
  if (true_labels.size() != predicted.size())
    throw ValidationError("confusion: " + std::to_string(true_labels.size()) +
                          " truths vs " + std::to_string(predicted.size()) +
                          " predictions");
  ConfusionMatrix cm;
  cm.labels = task_classes(task);
  const Index k = static_cast<Index>(cm.labels.size());
  cm.counts = Mat<Index>::Zero(k, k);
  for (std::size_t i = 0; i < true_labels.size(); ++i)
    cm.counts(cm.label_index(true_labels[i]), cm.label_index(predicted[i])) += 1;
  return cm;
}

double sensitivity(const ConfusionMatrix& cm, Task task) {
  Index hits = 0, total = 0;
  for (const std::string& c : task_adventitious(task)) {
    const Index i = cm.label_index(c);
    hits += cm.counts(i, i);
    total += cm.counts.row(i).sum();
  }
  if (total == 0)
    throw ValidationError("sensitivity undefined: no adventitious samples in truth");
  return static_cast<double>(hits) / static_cast<double>(total);
}

double specificity(const ConfusionMatrix& cm) {
  const Index n = cm.label_index("N");
  const Index total = cm.counts.row(n).sum();
  if (total == 0)
    throw ValidationError("specificity undefined: no Normal samples in truth");
  return static_cast<double>(cm.counts(n, n)) / static_cast<double>(total);
}

}  // namespace lsc
