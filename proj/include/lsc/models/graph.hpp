// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lsc/nn/init.hpp"
#include "lsc/nn/layers.hpp"

namespace lsc {

// A built classifier: one root layer chain, a mode flag, and the rng that
// feeds any dropout layers. Address-stable once built (dropout keeps a
// pointer to the rng), so neither copyable nor movable.
template <typename Scalar>
class ModelGraph {
 public:
  ModelGraph(std::string kind, Index num_classes)
      : kind_(std::move(kind)), num_classes_(num_classes) {}
  ModelGraph(const ModelGraph&) = delete;
  ModelGraph& operator=(const ModelGraph&) = delete;

  Tensor<Scalar> forward(const Tensor<Scalar>& x) { return root_.forward(x, mode_); }
  Tensor<Scalar> backward(const Tensor<Scalar>& dy) { return root_.backward(dy); }

  void set_mode(Mode m) { mode_ = m; }
  Mode mode() const { return mode_; }

  Sequential<Scalar>& root() { return root_; }
  std::mt19937& rng() { return rng_; }
  void seed_rng(std::uint32_t s) { rng_.seed(s); }

  const std::string& kind() const { return kind_; }
  Index num_classes() const { return num_classes_; }

  // parameters and buffers in graph order
  std::vector<Parameter<Scalar>*> state() {
    std::vector<Parameter<Scalar>*> out;
    root_.collect(out);
    return out;
  }
  std::vector<Parameter<Scalar>*> trainable() {
    std::vector<Parameter<Scalar>*> out;
    for (Parameter<Scalar>* p : state())
      if (p->trainable) out.push_back(p);
    return out;
  }

  Index parameter_count(bool trainable_only = true) {
    Index n = 0;
    for (Parameter<Scalar>* p : state())
      if (!trainable_only || p->trainable) n += p->value.numel();
    return n;
  }

  void check_names() {
    std::set<std::string> seen;
    for (Parameter<Scalar>* p : state()) {
      if (p->name.empty()) throw ValidationError("model: unnamed parameter");
      if (!seen.insert(p->name).second)
        throw ValidationError("model: duplicate parameter name " + p->name);
    }
  }

 private:
  std::string kind_;
  Index num_classes_;
  Mode mode_ = Mode::kTrain;
  std::mt19937 rng_;
  Sequential<Scalar> root_;
};

// Generic seeded init pass in state order: 4-d weights get fan_in =
// C*kh*kw, 2-d weights get fan_in = rows; 1-d tensors (biases, batch
// norm) keep their constructed values.
template <typename Scalar>
void init_parameters(ModelGraph<Scalar>& model, std::uint32_t seed) {
  std::mt19937 rng(seed);
  for (Parameter<Scalar>* p : model.state()) {
    if (!p->trainable) continue;
    if (p->value.ndim() == 4) {
      kaiming_uniform(p->value, p->value.dim(1) * p->value.dim(2) * p->value.dim(3), rng);
    } else if (p->value.ndim() == 2) {
      kaiming_uniform(p->value, p->value.dim(0), rng);
    }
  }
}

}  // namespace lsc
