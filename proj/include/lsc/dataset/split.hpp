// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsc/common.hpp"

namespace lsc {

struct SplitSpec {
  std::vector<std::string> train_ids;
  std::vector<std::string> val_ids;
  double ratio = 0.9;
  std::uint32_t seed = 0;
};

// Per-class seeded shuffle and cut: every class contributes
// round(n_c * (1 - ratio)) items to validation, at least one stays
// in training. Deterministic for a fixed seed.
SplitSpec stratified_split(const std::vector<std::pair<std::string, std::string>>& items,
                           double ratio, std::uint32_t seed);

}  // namespace lsc
