// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <vector>

#include "lsc/training/config.hpp"

namespace lsc {

// initial_lr * factor^floor(epoch/every), computed by repeated
// multiplication so the step values match decimal literals bit-exactly.
inline double lr_at_epoch(const TrainConfig& cfg, Index epoch) {
  if (epoch < 0) throw ValidationError("lr_at_epoch: negative epoch");
  double lr = cfg.initial_lr;
  for (Index k = 0; k < epoch / cfg.lr_decay_every; ++k) lr *= cfg.lr_decay_factor;
  return lr;
}

// Stop once `patience` consecutive epochs have failed to strictly improve
// on the best validation loss seen before them.
inline bool should_stop_early(const std::vector<double>& val_losses, Index patience) {
  if (val_losses.empty()) throw ValidationError("early stop: empty history");
  if (patience < 1) throw ValidationError("early stop: patience must be >= 1");
  Index last_improvement = 0;
  double best = val_losses[0];
  for (std::size_t i = 1; i < val_losses.size(); ++i) {
    if (val_losses[i] < best) {
      best = val_losses[i];
      last_improvement = static_cast<Index>(i);
    }
  }
  return static_cast<Index>(val_losses.size()) - 1 - last_improvement >= patience;
}

}  // namespace lsc
