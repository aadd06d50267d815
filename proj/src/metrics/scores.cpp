// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/metrics/scores.hpp"

#include <nlohmann/json.hpp>

namespace lsc {

ChallengeScores aggregate(double se, double sp) {
  if (!(se >= 0.0 && se <= 1.0) || !(sp >= 0.0 && sp <= 1.0))
    throw ValidationError("aggregate: se and sp must be in [0,1]");
  ChallengeScores s;
  s.se = se;
  s.sp = sp;
  s.as_score = (se + sp) / 2.0;
  s.hs = (se + sp) == 0.0 ? 0.0 : 2.0 * se * sp / (se + sp);
  s.score = (s.as_score + s.hs) / 2.0;
  return s;
}

ChallengeScores scores_from_confusion(const ConfusionMatrix& cm, Task task) {
  return aggregate(sensitivity(cm, task), specificity(cm));
}

double total_score(const std::map<Task, double>& task_scores) {
  static const std::map<Task, double> kWeights{
      {Task::k11, 0.2}, {Task::k12, 0.3}, {Task::k21, 0.2}, {Task::k22, 0.3}};
  double total = 0.0;
  for (const auto& [task, weight] : kWeights) {
    auto it = task_scores.find(task);
    if (it == task_scores.end())
      throw ValidationError("total_score: missing task " + task_id(task));
    if (!(it->second >= 0.0 && it->second <= 1.0))
      throw ValidationError("total_score: score for " + task_id(task) + " outside [0,1]");
    total += weight * it->second;
  }
  return total;
}

std::string score_report_json(Task task, const ChallengeScores& s) {
  nlohmann::json j;
  j["task"] = task_id(task);
  j["se"] = s.se;
  j["sp"] = s.sp;
  j["as"] = s.as_score;
  j["hs"] = s.hs;
  j["score"] = s.score;
  return j.dump(2) + "\n";
}

ChallengeScores score_report_from_json(const std::string& text, Task* task_out) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("score report: bad JSON: ") + e.what());
  }
  try {
    if (task_out) *task_out = task_from_id(j.at("task").get<std::string>());
    ChallengeScores s;
    s.se = j.at("se").get<double>();
    s.sp = j.at("sp").get<double>();
    s.as_score = j.at("as").get<double>();
    s.hs = j.at("hs").get<double>();
    s.score = j.at("score").get<double>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("score report: missing field: ") + e.what());
  }
}

}  // namespace lsc
