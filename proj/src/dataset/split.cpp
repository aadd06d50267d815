// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/dataset/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace lsc {

SplitSpec stratified_split(const std::vector<std::pair<std::string, std::string>>& items,
                           double ratio, std::uint32_t seed) {
  if (items.empty()) throw ValidationError("stratified_split: empty input");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ValidationError("stratified_split: ratio must be in (0,1), got " +
                          std::to_string(ratio));

  // std::map keeps class order stable across runs.
  std::map<std::string, std::vector<std::string>> by_class;
  for (const auto& [id, label] : items) by_class[label].push_back(id);

  SplitSpec spec;
  spec.ratio = ratio;
  spec.seed = seed;
  std::mt19937 rng(seed);
  for (auto& [label, ids] : by_class) {
    std::shuffle(ids.begin(), ids.end(), rng);
    const auto n = static_cast<Index>(ids.size());
    auto n_val = static_cast<Index>(std::llround(static_cast<double>(n) * (1.0 - ratio)));
    n_val = std::min(n_val, n - 1);  // keep every class represented in training
    for (Index i = 0; i < n; ++i) {
      if (i < n_val)
        spec.val_ids.push_back(ids[static_cast<std::size_t>(i)]);
      else
        spec.train_ids.push_back(ids[static_cast<std::size_t>(i)]);
    }
  }
  std::sort(spec.train_ids.begin(), spec.train_ids.end());
  std::sort(spec.val_ids.begin(), spec.val_ids.end());
  return spec;
}

}  // namespace lsc
