// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <map>
#include <string>

#include "lsc/metrics/confusion.hpp"

namespace lsc {

struct ChallengeScores {
  double se = 0.0;
  double sp = 0.0;
  double as_score = 0.0;  // (se+sp)/2
  double hs = 0.0;        // 2*se*sp/(se+sp), 0 at se=sp=0
  double score = 0.0;     // (as+hs)/2
};

ChallengeScores aggregate(double se, double sp);
ChallengeScores scores_from_confusion(const ConfusionMatrix& cm, Task task);

// 0.2*S11 + 0.3*S12 + 0.2*S21 + 0.3*S22; all four tasks required.
double total_score(const std::map<Task, double>& task_scores);

// {"task","se","sp","as","hs","score"} with sorted keys
std::string score_report_json(Task task, const ChallengeScores& s);
ChallengeScores score_report_from_json(const std::string& text, Task* task_out);

}  // namespace lsc
