// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <string>

#include "lsc/common.hpp"
#include "lsc/metrics/confusion.hpp"

namespace lsc {

enum class FeatureKind { kStft, kMel };

FeatureKind feature_kind_from_string(const std::string& s);
std::string to_string(FeatureKind kind);

struct TrainConfig {
  double initial_lr = 0.001;
  double lr_decay_factor = 0.1;
  Index lr_decay_every = 50;
  Index batch_size = 32;
  Index patience = 10;
  Index max_epochs = 100;
  std::uint32_t seed = 0;
  Task task = Task::k21;
  FeatureKind feature_kind = FeatureKind::kStft;
  double split_ratio = 0.9;

  void validate() const {
    if (!(initial_lr > 0.0)) throw ValidationError("train: initial_lr must be > 0");
    if (!(lr_decay_factor > 0.0)) throw ValidationError("train: lr_decay_factor must be > 0");
    if (lr_decay_every < 1) throw ValidationError("train: lr_decay_every must be >= 1");
    if (batch_size < 1) throw ValidationError("train: batch_size must be >= 1");
    if (patience < 1) throw ValidationError("train: patience must be >= 1");
    if (max_epochs < 1) throw ValidationError("train: max_epochs must be >= 1");
    if (!(split_ratio > 0.0 && split_ratio < 1.0))
      throw ValidationError("train: split_ratio must be in (0,1)");
  }
};

}  // namespace lsc
