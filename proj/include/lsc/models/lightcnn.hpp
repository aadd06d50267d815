// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lsc/models/graph.hpp"

namespace lsc {

struct LightCnnConfig {
  Index in_channels = 3;
  Index image_size = 224;
  std::vector<Index> conv_channels{32, 64, 96, 96};
  std::vector<Index> kernel_sizes{9, 7, 5, 3};
  Index pool_window = 2;
  Index hidden_dim = 128;
  double dropout_p = 0.0325;
  Index num_classes = 2;

  void validate() const {
    if (num_classes < 2) throw ValidationError("lightcnn: num_classes must be >= 2");
    if (hidden_dim < 1) throw ValidationError("lightcnn: hidden_dim must be >= 1");
    if (conv_channels.empty() || conv_channels.size() != kernel_sizes.size())
      throw ValidationError("lightcnn: conv_channels and kernel_sizes must align");
    if (in_channels < 1 || image_size < 1 || pool_window < 2)
      throw ValidationError("lightcnn: bad input geometry");
    Index s = image_size;
    for (std::size_t i = 0; i < conv_channels.size(); ++i) {
      if (kernel_sizes[i] % 2 == 0)
        throw ValidationError("lightcnn: kernels must be odd for same padding");
      if (s % pool_window != 0)
        throw ValidationError("lightcnn: spatial size " + std::to_string(s) +
                              " not divisible by pool window");
      s /= pool_window;
    }
    if (s < 1) throw ValidationError("lightcnn: network pools the image away");
  }

  Index flat_dim() const {
    Index s = image_size;
    for (std::size_t i = 0; i < conv_channels.size(); ++i) s /= pool_window;
    return conv_channels.back() * s * s;
  }
};

// conv(same, stride 1) -> batchnorm -> relu -> maxpool, repeated, then
// flatten -> fc1 -> relu -> dropout -> fc2. Logits out; softmax lives in
// the loss.
template <typename Scalar>
std::unique_ptr<ModelGraph<Scalar>> build_lightcnn(const LightCnnConfig& cfg,
                                                   std::uint32_t seed) {
  cfg.validate();
  auto model = std::make_unique<ModelGraph<Scalar>>("lightcnn", cfg.num_classes);
  model->seed_rng(seed);
  Sequential<Scalar>& net = model->root();

  Index ch = cfg.in_channels;
  for (std::size_t i = 0; i < cfg.conv_channels.size(); ++i) {
    const std::string idx = std::to_string(i + 1);
    net.add(std::make_unique<Conv2d<Scalar>>("conv" + idx, ch, cfg.conv_channels[i],
                                             cfg.kernel_sizes[i], 1, PadSpec::same()));
    net.add(std::make_unique<BatchNorm2d<Scalar>>("bn" + idx, cfg.conv_channels[i]));
    net.add(std::make_unique<ReLU<Scalar>>());
    net.add(std::make_unique<MaxPool2d<Scalar>>(cfg.pool_window));
    ch = cfg.conv_channels[i];
  }
  net.add(std::make_unique<Flatten<Scalar>>());
  net.add(std::make_unique<Linear<Scalar>>("fc1", cfg.flat_dim(), cfg.hidden_dim));
  net.add(std::make_unique<ReLU<Scalar>>());
  net.add(std::make_unique<Dropout<Scalar>>(static_cast<Scalar>(cfg.dropout_p),
                                            &model->rng()));
  net.add(std::make_unique<Linear<Scalar>>("fc2", cfg.hidden_dim, cfg.num_classes));

  init_parameters(*model, seed);
  model->check_names();
  return model;
}

}  // namespace lsc
