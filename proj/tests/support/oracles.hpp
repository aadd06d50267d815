// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lsc/dsp/fft.hpp"
#include "lsc/nn/layers.hpp"

namespace lsc::test {

// Brute-force DFT, any length. X[k] = sum_j x[j] exp(-2*pi*i*j*k/n).
inline CVec<double> naive_dft(const CVec<double>& x) {
  const Index n = x.size();
  CVec<double> out(n);
  for (Index k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (Index j = 0; j < n; ++j) {
      const double phase =
          -2.0 * EIGEN_PI * static_cast<double>(j) * static_cast<double>(k) / static_cast<double>(n);
      acc += x[j] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    out[k] = acc;
  }
  return out;
}

struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("lsc_test_" + tag + "_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline void fill_uniform(Tensor<double>& t, std::mt19937& rng, double lo = -1.0,
                         double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  for (Index i = 0; i < t.numel(); ++i) t.data[i] = dist(rng);
}

// Central-difference check of one layer: objective J = sum(coeff .* forward(x)),
// analytic grads from backward(coeff) vs numeric J differences. Checks the
// input gradient plus every trainable parameter. Returns max relative error,
// where relative = |analytic - numeric| / max(1, |analytic|, |numeric|).
inline double layer_grad_max_rel_err(Layer<double>& layer, Tensor<double> x,
                                     std::mt19937& rng, Mode mode = Mode::kTrain,
                                     double eps = 1e-5) {
  Tensor<double> y = layer.forward(x, mode);
  Tensor<double> coeff = y;
  fill_uniform(coeff, rng);

  std::vector<Parameter<double>*> params;
  layer.collect(params);
  x.ensure_grad();
  for (Parameter<double>* p : params) {
    p->value.ensure_grad();
    p->value.zero_grad();
  }
  // forward again so the layer caches this exact x before backward
  y = layer.forward(x, mode);
  Tensor<double> dx = layer.backward(coeff);

  const auto objective = [&]() {
    Tensor<double> out = layer.forward(x, mode);
    return (out.data.array() * coeff.data.array()).sum();
  };
  double max_err = 0.0;
  const auto check_block = [&](Vec<double>& values, const Vec<double>& analytic) {
    for (Index i = 0; i < values.size(); ++i) {
      const double keep = values[i];
      values[i] = keep + eps;
      const double up = objective();
      values[i] = keep - eps;
      const double down = objective();
      values[i] = keep;
      const double numeric = (up - down) / (2.0 * eps);
      const double denom = std::max({1.0, std::abs(analytic[i]), std::abs(numeric)});
      max_err = std::max(max_err, std::abs(analytic[i] - numeric) / denom);
    }
  };
  check_block(x.data, dx.data);
  for (Parameter<double>* p : params)
    if (p->trainable) check_block(p->value.data, p->value.grad);
  return max_err;
}

}  // namespace lsc::test
