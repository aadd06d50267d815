// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lsc/common.hpp"
#include "lsc/nn/layers.hpp"

namespace lsc {

template <typename Scalar>
struct AdamConfig {
  Scalar beta1 = Scalar(0.9);
  Scalar beta2 = Scalar(0.999);
  Scalar eps = Scalar(1e-8);
};

// Adam with bias correction. A parameter whose gradient is identically
// zero keeps its value and moments; only its step count advances.
template <typename Scalar>
class Adam {
 public:
  explicit Adam(AdamConfig<Scalar> cfg = {}) : cfg_(cfg) {}

  void step(const std::vector<Parameter<Scalar>*>& params, Scalar lr) {
    for (Parameter<Scalar>* p : params) {
      if (!p->trainable) continue;
      if (!p->value.has_grad())
        throw NumericError("adam: parameter " + p->name + " has no gradient");
      Slot& s = slots_[p->name];
      if (s.m.size() != p->value.numel()) {
        s.m.setZero(p->value.numel());
        s.v.setZero(p->value.numel());
        s.t = 0;
      }
      ++s.t;
      const Vec<Scalar>& g = p->value.grad;
      if ((g.array() == Scalar(0)).all()) continue;
      s.m = cfg_.beta1 * s.m + (Scalar(1) - cfg_.beta1) * g;
      s.v = cfg_.beta2 * s.v.array() + (Scalar(1) - cfg_.beta2) * g.array().square();
      const Scalar c1 =
          Scalar(1) - static_cast<Scalar>(std::pow(static_cast<double>(cfg_.beta1), s.t));
      const Scalar c2 =
          Scalar(1) - static_cast<Scalar>(std::pow(static_cast<double>(cfg_.beta2), s.t));
      p->value.data.array() -=
          lr * (s.m.array() / c1) / ((s.v.array() / c2).sqrt() + cfg_.eps);
    }
  }

  std::int64_t step_count(const std::string& name) const {
    auto it = slots_.find(name);
    return it == slots_.end() ? 0 : it->second.t;
  }

 private:
  struct Slot {
    Vec<Scalar> m, v;
    std::int64_t t = 0;
  };
  AdamConfig<Scalar> cfg_;
  std::map<std::string, Slot> slots_;
};

}  // namespace lsc
