// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lsc/common.hpp"
#include "lsc/nn/tensor.hpp"

namespace lsc {

enum class Mode { kTrain, kEval };

template <typename Scalar>
struct Parameter {
  std::string name;
  Tensor<Scalar> value;
  bool trainable = true;
};

// Caffe-style layer: forward caches whatever backward needs; backward
// accumulates into parameter grads (callers zero them per step).
template <typename Scalar>
class Layer {
 public:
  virtual ~Layer() = default;
  virtual Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode mode) = 0;
  virtual Tensor<Scalar> backward(const Tensor<Scalar>& dy) = 0;
  // appends parameters and buffers in graph order
  virtual void collect(std::vector<Parameter<Scalar>*>& out) { (void)out; }
};

struct PadSpec {
  enum class Kind { kValid, kSame, kExplicit };
  Kind kind = Kind::kValid;
  Index h = 0;
  Index w = 0;

  static PadSpec valid() { return {}; }
  static PadSpec same() { return {Kind::kSame, 0, 0}; }
  static PadSpec explicit_pad(Index h, Index w) { return {Kind::kExplicit, h, w}; }
};

namespace detail {

// Unrolls padded input patches into columns: row ((c*kh+i)*kw+j),
// one column per output pixel. cols is col-major so each output pixel
// is written contiguously.
template <typename Scalar>
void im2col(const Scalar* x, Index C, Index H, Index W, Index kh, Index kw, Index stride,
            Index ph, Index pw, Index Ho, Index Wo, Mat<Scalar>& cols) {
  const Index rows = C * kh * kw;
  for (Index ho = 0; ho < Ho; ++ho) {
    for (Index wo = 0; wo < Wo; ++wo) {
      Scalar* col = cols.data() + (ho * Wo + wo) * rows;
      const Index h0 = ho * stride - ph;
      const Index w0 = wo * stride - pw;
      Index r = 0;
      for (Index c = 0; c < C; ++c) {
        const Scalar* plane = x + c * H * W;
        for (Index i = 0; i < kh; ++i) {
          const Index h = h0 + i;
          if (h < 0 || h >= H) {
            for (Index j = 0; j < kw; ++j) col[r++] = Scalar(0);
            continue;
          }
          const Scalar* row = plane + h * W;
          for (Index j = 0; j < kw; ++j) {
            const Index w = w0 + j;
            col[r++] = (w >= 0 && w < W) ? row[w] : Scalar(0);
          }
        }
      }
    }
  }
}

template <typename Scalar>
void col2im(const Mat<Scalar>& cols, Index C, Index H, Index W, Index kh, Index kw,
            Index stride, Index ph, Index pw, Index Ho, Index Wo, Scalar* dx) {
  const Index rows = C * kh * kw;
  for (Index ho = 0; ho < Ho; ++ho) {
    for (Index wo = 0; wo < Wo; ++wo) {
      const Scalar* col = cols.data() + (ho * Wo + wo) * rows;
      const Index h0 = ho * stride - ph;
      const Index w0 = wo * stride - pw;
      Index r = 0;
      for (Index c = 0; c < C; ++c) {
        Scalar* plane = dx + c * H * W;
        for (Index i = 0; i < kh; ++i) {
          const Index h = h0 + i;
          if (h < 0 || h >= H) {
            r += kw;
            continue;
          }
          Scalar* row = plane + h * W;
          for (Index j = 0; j < kw; ++j) {
            const Index w = w0 + j;
            if (w >= 0 && w < W) row[w] += col[r];
            ++r;
          }
        }
      }
    }
  }
}

}  // namespace detail

template <typename Scalar>
class Conv2d : public Layer<Scalar> {
 public:
  Conv2d(std::string name, Index in_ch, Index out_ch, Index kernel, Index stride,
         PadSpec pad, bool with_bias = true)
      : name_(std::move(name)),
        in_ch_(in_ch),
        out_ch_(out_ch),
        kh_(kernel),
        kw_(kernel),
        stride_(stride),
        pad_(pad),
        with_bias_(with_bias) {
    if (in_ch < 1 || out_ch < 1 || kernel < 1 || stride < 1)
      throw ValidationError("conv2d " + name_ + ": bad config");
    weight_.name = name_ + ".weight";
    weight_.value = Tensor<Scalar>({out_ch_, in_ch_, kh_, kw_});
    if (with_bias_) {
      bias_.name = name_ + ".bias";
      bias_.value = Tensor<Scalar>({out_ch_});
    }
  }

  std::pair<Index, Index> resolve_pad() const {
    switch (pad_.kind) {
      case PadSpec::Kind::kValid:
        return {0, 0};
      case PadSpec::Kind::kSame:
        if (kh_ % 2 == 0 || kw_ % 2 == 0)
          throw ValidationError("conv2d " + name_ + ": same padding needs odd kernels");
        return {(kh_ - 1) / 2, (kw_ - 1) / 2};
      case PadSpec::Kind::kExplicit:
        return {pad_.h, pad_.w};
    }
    return {0, 0};
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    if (x.ndim() != 4 || x.dim(1) != in_ch_)
      throw ValidationError("conv2d " + name_ + ": expected [N," + std::to_string(in_ch_) +
                            ",H,W], got " + x.shape_str());
    const Index N = x.dim(0), H = x.dim(2), W = x.dim(3);
    const auto [ph, pw] = resolve_pad();
    if (H + 2 * ph < kh_ || W + 2 * pw < kw_)
      throw ValidationError("conv2d " + name_ + ": kernel larger than padded input");
    const Index Ho = (H + 2 * ph - kh_) / stride_ + 1;
    const Index Wo = (W + 2 * pw - kw_) / stride_ + 1;
    const Index R = in_ch_ * kh_ * kw_;
    const Index P = Ho * Wo;

    x_ = x;
    Tensor<Scalar> y({N, out_ch_, Ho, Wo});
    auto w_mat = weight_.value.as_matrix(out_ch_, R);
    parallel_for(N, [&](Index nb, Index ne, int) {
      Mat<Scalar> cols(R, P);
      for (Index n = nb; n < ne; ++n) {
        detail::im2col(x.data.data() + n * in_ch_ * H * W, in_ch_, H, W, kh_, kw_, stride_,
                       ph, pw, Ho, Wo, cols);
        Eigen::Map<typename Tensor<Scalar>::RowMat> out(y.data.data() + n * out_ch_ * P,
                                                        out_ch_, P);
        out.noalias() = w_mat * cols;
        if (with_bias_) out.colwise() += bias_.value.data;
      }
    });
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) override {
    const Index N = x_.dim(0), H = x_.dim(2), W = x_.dim(3);
    const auto [ph, pw] = resolve_pad();
    const Index Ho = (H + 2 * ph - kh_) / stride_ + 1;
    const Index Wo = (W + 2 * pw - kw_) / stride_ + 1;
    const Index R = in_ch_ * kh_ * kw_;
    const Index P = Ho * Wo;
    check_shape(dy, {N, out_ch_, Ho, Wo}, "conv2d " + name_ + " backward");

    weight_.value.ensure_grad();
    if (with_bias_) bias_.value.ensure_grad();
    Tensor<Scalar> dx(x_.shape);
    auto w_mat = weight_.value.as_matrix(out_ch_, R);

    // per-sample weight-grad partials, reduced in sample order afterwards
    // so results do not depend on worker chunking
    std::vector<Mat<Scalar>> dw(static_cast<std::size_t>(N));
    parallel_for(N, [&](Index nb, Index ne, int) {
      Mat<Scalar> cols(R, P);
      Mat<Scalar> dxcols(R, P);
      for (Index n = nb; n < ne; ++n) {
        detail::im2col(x_.data.data() + n * in_ch_ * H * W, in_ch_, H, W, kh_, kw_,
                       stride_, ph, pw, Ho, Wo, cols);
        Eigen::Map<const typename Tensor<Scalar>::RowMat> dy_mat(
            dy.data.data() + n * out_ch_ * P, out_ch_, P);
        dw[static_cast<std::size_t>(n)].noalias() = dy_mat * cols.transpose();
        dxcols.noalias() = w_mat.transpose() * dy_mat;
        detail::col2im(dxcols, in_ch_, H, W, kh_, kw_, stride_, ph, pw, Ho, Wo,
                       dx.data.data() + n * in_ch_ * H * W);
      }
    });

    Eigen::Map<typename Tensor<Scalar>::RowMat> dwg(weight_.value.grad.data(), out_ch_, R);
    for (Index n = 0; n < N; ++n) {
      dwg += dw[static_cast<std::size_t>(n)];
      if (with_bias_) {
        Eigen::Map<const typename Tensor<Scalar>::RowMat> dy_mat(
            dy.data.data() + n * out_ch_ * P, out_ch_, P);
        bias_.value.grad += dy_mat.rowwise().sum();
      }
    }
    x_ = Tensor<Scalar>();
    return dx;
  }

  void collect(std::vector<Parameter<Scalar>*>& out) override {
    out.push_back(&weight_);
    if (with_bias_) out.push_back(&bias_);
  }

  Parameter<Scalar>& weight() { return weight_; }
  Parameter<Scalar>& bias() { return bias_; }
  Index fan_in() const { return in_ch_ * kh_ * kw_; }

 private:
  std::string name_;
  Index in_ch_, out_ch_, kh_, kw_, stride_;
  PadSpec pad_;
  bool with_bias_;
  Parameter<Scalar> weight_, bias_;
  Tensor<Scalar> x_;
};

template <typename Scalar>
class MaxPool2d : public Layer<Scalar> {
 public:
  explicit MaxPool2d(Index window, Index stride = 0, Index pad = 0)
      : win_(window), stride_(stride == 0 ? window : stride), pad_(pad) {
    if (win_ < 1 || stride_ < 1 || pad_ < 0 || pad_ >= win_)
      throw ValidationError("maxpool2d: bad config");
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    if (x.ndim() != 4) throw ValidationError("maxpool2d: expected [N,C,H,W]");
    const Index N = x.dim(0), C = x.dim(1), H = x.dim(2), W = x.dim(3);
    if (H + 2 * pad_ < win_ || W + 2 * pad_ < win_)
      throw ValidationError("maxpool2d: window " + std::to_string(win_) +
                            " larger than input " + x.shape_str());
    const Index Ho = (H + 2 * pad_ - win_) / stride_ + 1;
    const Index Wo = (W + 2 * pad_ - win_) / stride_ + 1;

    in_shape_ = x.shape;
    Tensor<Scalar> y({N, C, Ho, Wo});
    argmax_.assign(static_cast<std::size_t>(y.numel()), 0);
    parallel_for(N, [&](Index nb, Index ne, int) {
      for (Index n = nb; n < ne; ++n) {
        for (Index c = 0; c < C; ++c) {
          const Scalar* plane = x.data.data() + (n * C + c) * H * W;
          const Index out_base = (n * C + c) * Ho * Wo;
          for (Index ho = 0; ho < Ho; ++ho) {
            for (Index wo = 0; wo < Wo; ++wo) {
              Scalar best = -std::numeric_limits<Scalar>::infinity();
              Index best_idx = -1;
              for (Index i = 0; i < win_; ++i) {
                const Index h = ho * stride_ - pad_ + i;
                if (h < 0 || h >= H) continue;
                for (Index j = 0; j < win_; ++j) {
                  const Index w = wo * stride_ - pad_ + j;
                  if (w < 0 || w >= W) continue;
                  const Scalar v = plane[h * W + w];
                  if (v > best) {
                    best = v;
                    best_idx = h * W + w;
                  }
                }
              }
              if (best_idx < 0) throw ValidationError("maxpool2d: window saw only padding");
              y.data[out_base + ho * Wo + wo] = best;
              argmax_[static_cast<std::size_t>(out_base + ho * Wo + wo)] =
                  (n * C + c) * H * W + best_idx;
            }
          }
        }
      }
    });
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) override {
    const Index N = in_shape_[0], C = in_shape_[1];
    const Index per_n = static_cast<Index>(argmax_.size()) / N;
    Tensor<Scalar> dx(in_shape_);
    parallel_for(N, [&](Index nb, Index ne, int) {
      for (Index o = nb * per_n; o < ne * per_n; ++o)
        dx.data[argmax_[static_cast<std::size_t>(o)]] += dy.data[o];
    });
    (void)C;
    return dx;
  }

 private:
  Index win_, stride_, pad_;
  std::vector<Index> in_shape_;
  std::vector<Index> argmax_;
};

template <typename Scalar>
class BatchNorm2d : public Layer<Scalar> {
 public:
  explicit BatchNorm2d(std::string name, Index channels, Scalar momentum = Scalar(0.1),
                       Scalar eps = Scalar(1e-5))
      : name_(std::move(name)), channels_(channels), momentum_(momentum), eps_(eps) {
    gamma_.name = name_ + ".weight";
    gamma_.value = Tensor<Scalar>({channels_});
    gamma_.value.data.setOnes();
    beta_.name = name_ + ".bias";
    beta_.value = Tensor<Scalar>({channels_});
    running_mean_.name = name_ + ".running_mean";
    running_mean_.value = Tensor<Scalar>({channels_});
    running_mean_.trainable = false;
    running_var_.name = name_ + ".running_var";
    running_var_.value = Tensor<Scalar>({channels_});
    running_var_.value.data.setOnes();
    running_var_.trainable = false;
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode mode) override {
    if (x.ndim() != 4 || x.dim(1) != channels_)
      throw ValidationError("batchnorm " + name_ + ": expected [N," +
                            std::to_string(channels_) + ",H,W], got " + x.shape_str());
    const Index N = x.dim(0), C = channels_, H = x.dim(2), W = x.dim(3);
    const Index m = N * H * W;
    mode_ = mode;
    m_ = m;
    xhat_ = Tensor<Scalar>(x.shape);
    invstd_.resize(C);
    Tensor<Scalar> y(x.shape);

    if (mode == Mode::kTrain) {
      if (m < 2)
        throw ValidationError("batchnorm " + name_ +
                              ": train mode needs >= 2 values per channel");
      parallel_for(C, [&](Index cb, Index ce, int) {
        for (Index c = cb; c < ce; ++c) {
          double sum = 0.0;
          for (Index n = 0; n < N; ++n) {
            const Scalar* p = x.data.data() + (n * C + c) * H * W;
            for (Index k = 0; k < H * W; ++k) sum += static_cast<double>(p[k]);
          }
          const double mean = sum / static_cast<double>(m);
          double sq = 0.0;
          for (Index n = 0; n < N; ++n) {
            const Scalar* p = x.data.data() + (n * C + c) * H * W;
            for (Index k = 0; k < H * W; ++k) {
              const double d = static_cast<double>(p[k]) - mean;
              sq += d * d;
            }
          }
          const double var = sq / static_cast<double>(m);  // biased, used for the norm
          const double inv = 1.0 / std::sqrt(var + static_cast<double>(eps_));
          invstd_[c] = static_cast<Scalar>(inv);
          const Scalar g = gamma_.value.data[c], b = beta_.value.data[c];
          for (Index n = 0; n < N; ++n) {
            const Scalar* p = x.data.data() + (n * C + c) * H * W;
            Scalar* ph = xhat_.data.data() + (n * C + c) * H * W;
            Scalar* py = y.data.data() + (n * C + c) * H * W;
            for (Index k = 0; k < H * W; ++k) {
              const Scalar xh =
                  static_cast<Scalar>((static_cast<double>(p[k]) - mean) * inv);
              ph[k] = xh;
              py[k] = g * xh + b;
            }
          }
          const double unbiased = sq / static_cast<double>(m - 1);
          running_mean_.value.data[c] = static_cast<Scalar>(
              (1.0 - static_cast<double>(momentum_)) *
                  static_cast<double>(running_mean_.value.data[c]) +
              static_cast<double>(momentum_) * mean);
          running_var_.value.data[c] = static_cast<Scalar>(
              (1.0 - static_cast<double>(momentum_)) *
                  static_cast<double>(running_var_.value.data[c]) +
              static_cast<double>(momentum_) * unbiased);
        }
      });
    } else {
      parallel_for(C, [&](Index cb, Index ce, int) {
        for (Index c = cb; c < ce; ++c) {
          const double mean = static_cast<double>(running_mean_.value.data[c]);
          const double inv =
              1.0 / std::sqrt(static_cast<double>(running_var_.value.data[c]) +
                              static_cast<double>(eps_));
          invstd_[c] = static_cast<Scalar>(inv);
          const Scalar g = gamma_.value.data[c], b = beta_.value.data[c];
          for (Index n = 0; n < N; ++n) {
            const Scalar* p = x.data.data() + (n * C + c) * H * W;
            Scalar* ph = xhat_.data.data() + (n * C + c) * H * W;
            Scalar* py = y.data.data() + (n * C + c) * H * W;
            for (Index k = 0; k < H * W; ++k) {
              const Scalar xh = static_cast<Scalar>((static_cast<double>(p[k]) - mean) * inv);
              ph[k] = xh;
              py[k] = g * xh + b;
            }
          }
        }
      });
    }
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) override {
    check_shape(dy, xhat_.shape, "batchnorm " + name_ + " backward");
    const Index N = xhat_.dim(0), C = channels_, H = xhat_.dim(2), W = xhat_.dim(3);
    gamma_.value.ensure_grad();
    beta_.value.ensure_grad();
    Tensor<Scalar> dx(xhat_.shape);

    parallel_for(C, [&](Index cb, Index ce, int) {
      for (Index c = cb; c < ce; ++c) {
        double s1 = 0.0, s2 = 0.0;
        for (Index n = 0; n < N; ++n) {
          const Scalar* pdy = dy.data.data() + (n * C + c) * H * W;
          const Scalar* ph = xhat_.data.data() + (n * C + c) * H * W;
          for (Index k = 0; k < H * W; ++k) {
            s1 += static_cast<double>(pdy[k]);
            s2 += static_cast<double>(pdy[k]) * static_cast<double>(ph[k]);
          }
        }
        beta_.value.grad[c] += static_cast<Scalar>(s1);
        gamma_.value.grad[c] += static_cast<Scalar>(s2);

        const double g = static_cast<double>(gamma_.value.data[c]);
        const double inv = static_cast<double>(invstd_[c]);
        if (mode_ == Mode::kTrain) {
          const double md = static_cast<double>(m_);
          for (Index n = 0; n < N; ++n) {
            const Scalar* pdy = dy.data.data() + (n * C + c) * H * W;
            const Scalar* ph = xhat_.data.data() + (n * C + c) * H * W;
            Scalar* pdx = dx.data.data() + (n * C + c) * H * W;
            for (Index k = 0; k < H * W; ++k) {
              const double t = md * static_cast<double>(pdy[k]) - s1 -
                               static_cast<double>(ph[k]) * s2;
              pdx[k] = static_cast<Scalar>(g * inv / md * t);
            }
          }
        } else {
          for (Index n = 0; n < N; ++n) {
            const Scalar* pdy = dy.data.data() + (n * C + c) * H * W;
            Scalar* pdx = dx.data.data() + (n * C + c) * H * W;
            for (Index k = 0; k < H * W; ++k)
              pdx[k] = static_cast<Scalar>(g * inv * static_cast<double>(pdy[k]));
          }
        }
      }
    });
    xhat_ = Tensor<Scalar>();
    return dx;
  }

  void collect(std::vector<Parameter<Scalar>*>& out) override {
    out.push_back(&gamma_);
    out.push_back(&beta_);
    out.push_back(&running_mean_);
    out.push_back(&running_var_);
  }

  Parameter<Scalar>& gamma() { return gamma_; }
  Parameter<Scalar>& beta() { return beta_; }
  Parameter<Scalar>& running_mean() { return running_mean_; }
  Parameter<Scalar>& running_var() { return running_var_; }

 private:
  std::string name_;
  Index channels_;
  Scalar momentum_, eps_;
  Parameter<Scalar> gamma_, beta_, running_mean_, running_var_;
  Tensor<Scalar> xhat_;
  Vec<Scalar> invstd_;
  Mode mode_ = Mode::kTrain;
  Index m_ = 0;
};

template <typename Scalar>
class ReLU : public Layer<Scalar> {
 public:
  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    Tensor<Scalar> y(x.shape);
    mask_.assign(static_cast<std::size_t>(x.numel()), 0);
    for (Index i = 0; i < x.numel(); ++i) {
      if (x.data[i] > Scalar(0)) {
        y.data[i] = x.data[i];
        mask_[static_cast<std::size_t>(i)] = 1;
      }
    }
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) override {
    Tensor<Scalar> dx(dy.shape);
    for (Index i = 0; i < dy.numel(); ++i)
      if (mask_[static_cast<std::size_t>(i)]) dx.data[i] = dy.data[i];
    return dx;
  }

 private:
  std::vector<std::uint8_t> mask_;
};

// Inverted dropout: survivors scaled by 1/(1-p) at train time, eval is identity.
template <typename Scalar>
class Dropout : public Layer<Scalar> {
 public:
  Dropout(Scalar p, std::mt19937* rng) : p_(p), rng_(rng) {
    if (!(p >= Scalar(0) && p < Scalar(1)))
      throw ValidationError("dropout: p must be in [0,1), got " + std::to_string(p));
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode mode) override {
    if (mode == Mode::kEval || p_ == Scalar(0)) {
      identity_ = true;
      return x;
    }
    identity_ = false;
    const Scalar scale = Scalar(1) / (Scalar(1) - p_);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    mask_.setZero(x.numel());
    Tensor<Scalar> y(x.shape);
    for (Index i = 0; i < x.numel(); ++i) {
      if (u(*rng_) >= static_cast<double>(p_)) {
        mask_[i] = scale;
        y.data[i] = x.data[i] * scale;
      }
    }
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) override {
    if (identity_) return dy;
    Tensor<Scalar> dx(dy.shape);
    dx.data = dy.data.cwiseProduct(mask_);
    return dx;
  }

 private:
  Scalar p_;
  std::mt19937* rng_;
  Vec<Scalar> mask_;
  bool identity_ = true;
};

template <typename Scalar>
class Flatten : public Layer<Scalar> {
 public:
  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    in_shape_ = x.shape;
    Tensor<Scalar> y = x;
    y.reshape({x.dim(0), x.numel() / x.dim(0)});
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) override {
    Tensor<Scalar> dx = dy;
    dx.reshape(in_shape_);
    return dx;
  }

 private:
  std::vector<Index> in_shape_;
};

template <typename Scalar>
class Linear : public Layer<Scalar> {
 public:
  Linear(std::string name, Index in_dim, Index out_dim)
      : name_(std::move(name)), in_dim_(in_dim), out_dim_(out_dim) {
    if (in_dim < 1 || out_dim < 1) throw ValidationError("linear " + name_ + ": bad dims");
    weight_.name = name_ + ".weight";
    weight_.value = Tensor<Scalar>({in_dim_, out_dim_});
    bias_.name = name_ + ".bias";
    bias_.value = Tensor<Scalar>({out_dim_});
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    if (x.ndim() != 2 || x.dim(1) != in_dim_)
      throw ValidationError("linear " + name_ + ": expected [N," + std::to_string(in_dim_) +
                            "], got " + x.shape_str());
    const Index N = x.dim(0);
    x_ = x;
    Tensor<Scalar> y({N, out_dim_});
    auto ym = y.as_matrix(N, out_dim_);
    ym.noalias() = x.as_matrix(N, in_dim_) * weight_.value.as_matrix(in_dim_, out_dim_);
    ym.rowwise() += bias_.value.data.transpose();
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) override {
    const Index N = x_.dim(0);
    check_shape(dy, {N, out_dim_}, "linear " + name_ + " backward");
    weight_.value.ensure_grad();
    bias_.value.ensure_grad();
    auto dym = dy.as_matrix(N, out_dim_);
    weight_.value.grad_matrix(in_dim_, out_dim_).noalias() +=
        x_.as_matrix(N, in_dim_).transpose() * dym;
    bias_.value.grad += dym.colwise().sum().transpose();
    Tensor<Scalar> dx({N, in_dim_});
    dx.as_matrix(N, in_dim_).noalias() =
        dym * weight_.value.as_matrix(in_dim_, out_dim_).transpose();
    x_ = Tensor<Scalar>();
    return dx;
  }

  void collect(std::vector<Parameter<Scalar>*>& out) override {
    out.push_back(&weight_);
    out.push_back(&bias_);
  }

  Parameter<Scalar>& weight() { return weight_; }
  Parameter<Scalar>& bias() { return bias_; }
  Index fan_in() const { return in_dim_; }

 private:
  std::string name_;
  Index in_dim_, out_dim_;
  Parameter<Scalar> weight_, bias_;
  Tensor<Scalar> x_;
};

template <typename Scalar>
class GlobalAvgPool : public Layer<Scalar> {
 public:
  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode) override {
    if (x.ndim() != 4) throw ValidationError("globalavgpool: expected [N,C,H,W]");
    in_shape_ = x.shape;
    const Index N = x.dim(0), C = x.dim(1), HW = x.dim(2) * x.dim(3);
    Tensor<Scalar> y({N, C});
    for (Index n = 0; n < N; ++n)
      for (Index c = 0; c < C; ++c) {
        double s = 0.0;
        const Scalar* p = x.data.data() + (n * C + c) * HW;
        for (Index k = 0; k < HW; ++k) s += static_cast<double>(p[k]);
        y.data[n * C + c] = static_cast<Scalar>(s / static_cast<double>(HW));
      }
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) override {
    const Index N = in_shape_[0], C = in_shape_[1], HW = in_shape_[2] * in_shape_[3];
    Tensor<Scalar> dx(in_shape_);
    for (Index n = 0; n < N; ++n)
      for (Index c = 0; c < C; ++c) {
        const Scalar g = dy.data[n * C + c] / static_cast<Scalar>(HW);
        Scalar* p = dx.data.data() + (n * C + c) * HW;
        for (Index k = 0; k < HW; ++k) p[k] = g;
      }
    return dx;
  }

 private:
  std::vector<Index> in_shape_;
};

template <typename Scalar>
class Sequential : public Layer<Scalar> {
 public:
  Sequential() = default;

  Sequential& add(std::unique_ptr<Layer<Scalar>> layer) {
    layers_.push_back(std::move(layer));
    return *this;
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode mode) override {
    Tensor<Scalar> cur = x;
    for (auto& l : layers_) cur = l->forward(cur, mode);
    return cur;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) override {
    Tensor<Scalar> cur = dy;
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) cur = (*it)->backward(cur);
    return cur;
  }

  void collect(std::vector<Parameter<Scalar>*>& out) override {
    for (auto& l : layers_) l->collect(out);
  }

  Index size() const { return static_cast<Index>(layers_.size()); }

 private:
  std::vector<std::unique_ptr<Layer<Scalar>>> layers_;
};

}  // namespace lsc
