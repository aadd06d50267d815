// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lsc/models/graph.hpp"

namespace lsc {

struct ResNet18Config {
  Index in_channels = 3;
  Index num_classes = 2;
  double head_dropout_p = 0.5;

  void validate() const {
    if (num_classes < 2) throw ValidationError("resnet18: num_classes must be >= 2");
    if (in_channels < 1) throw ValidationError("resnet18: bad in_channels");
  }
};

// Two 3x3 convs with a skip connection; stride-2 variants downsample the
// skip with a 1x1 conv + batchnorm.
template <typename Scalar>
class BasicBlock : public Layer<Scalar> {
 public:
  BasicBlock(const std::string& prefix, Index in_ch, Index out_ch, Index stride)
      : conv1_(prefix + ".conv1", in_ch, out_ch, 3, stride, PadSpec::explicit_pad(1, 1),
               false),
        bn1_(prefix + ".bn1", out_ch),
        conv2_(prefix + ".conv2", out_ch, out_ch, 3, 1, PadSpec::explicit_pad(1, 1), false),
        bn2_(prefix + ".bn2", out_ch) {
    if (stride != 1 || in_ch != out_ch) {
      down_conv_.emplace(prefix + ".downsample.0", in_ch, out_ch, 1, stride,
                         PadSpec::valid(), false);
      down_bn_.emplace(prefix + ".downsample.1", out_ch);
    }
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode mode) override {
    Tensor<Scalar> h = bn1_.forward(conv1_.forward(x, mode), mode);
    h = relu1_.forward(h, mode);
    h = bn2_.forward(conv2_.forward(h, mode), mode);
    Tensor<Scalar> skip =
        down_conv_ ? down_bn_->forward(down_conv_->forward(x, mode), mode) : x;
    if (!h.same_shape(skip))
      throw ValidationError("basicblock: branch shapes diverge " + h.shape_str() + " vs " +
                            skip.shape_str());
    h.data += skip.data;
    return relu2_.forward(h, mode);
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) override {
    Tensor<Scalar> d = relu2_.backward(dy);
    Tensor<Scalar> dmain = conv1_.backward(
        bn1_.backward(relu1_.backward(conv2_.backward(bn2_.backward(d)))));
    Tensor<Scalar> dskip = down_conv_ ? down_conv_->backward(down_bn_->backward(d)) : d;
    dmain.data += dskip.data;
    return dmain;
  }

  void collect(std::vector<Parameter<Scalar>*>& out) override {
    conv1_.collect(out);
    bn1_.collect(out);
    conv2_.collect(out);
    bn2_.collect(out);
    if (down_conv_) {
      down_conv_->collect(out);
      down_bn_->collect(out);
    }
  }

 private:
  Conv2d<Scalar> conv1_;
  BatchNorm2d<Scalar> bn1_;
  Conv2d<Scalar> conv2_;
  BatchNorm2d<Scalar> bn2_;
  ReLU<Scalar> relu1_, relu2_;
  std::optional<Conv2d<Scalar>> down_conv_;
  std::optional<BatchNorm2d<Scalar>> down_bn_;
};

// Standard 18-layer residual backbone to a 1000-d feature, then a
// dropout + linear head for the task classes.
template <typename Scalar>
std::unique_ptr<ModelGraph<Scalar>> build_resnet18(const ResNet18Config& cfg,
                                                   std::uint32_t seed) {
  cfg.validate();
  auto model = std::make_unique<ModelGraph<Scalar>>("resnet18", cfg.num_classes);
  model->seed_rng(seed);
  Sequential<Scalar>& net = model->root();

  net.add(std::make_unique<Conv2d<Scalar>>("conv1", cfg.in_channels, 64, 7, 2,
                                           PadSpec::explicit_pad(3, 3), false));
  net.add(std::make_unique<BatchNorm2d<Scalar>>("bn1", 64));
  net.add(std::make_unique<ReLU<Scalar>>());
  net.add(std::make_unique<MaxPool2d<Scalar>>(3, 2, 1));

  const Index stage_ch[4] = {64, 128, 256, 512};
  Index ch = 64;
  for (int s = 0; s < 4; ++s) {
    const std::string prefix = "layer" + std::to_string(s + 1);
    const Index stride = s == 0 ? 1 : 2;
    net.add(std::make_unique<BasicBlock<Scalar>>(prefix + ".0", ch, stage_ch[s], stride));
    net.add(std::make_unique<BasicBlock<Scalar>>(prefix + ".1", stage_ch[s], stage_ch[s], 1));
    ch = stage_ch[s];
  }

  net.add(std::make_unique<GlobalAvgPool<Scalar>>());
  net.add(std::make_unique<Linear<Scalar>>("fc", 512, 1000));
  net.add(std::make_unique<Dropout<Scalar>>(static_cast<Scalar>(cfg.head_dropout_p),
                                            &model->rng()));
  net.add(std::make_unique<Linear<Scalar>>("head.fc", 1000, cfg.num_classes));

  init_parameters(*model, seed);
  model->check_names();
  return model;
}

}  // namespace lsc
