// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cmath>
#include <complex>

#include "lsc/common.hpp"

namespace lsc {

template <typename Scalar>
using CVec = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

namespace detail {

template <typename Scalar>
void fft_in_place(CVec<Scalar>& x, bool inverse) {
  const Index n = x.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw ValidationError("fft: length must be a power of two, got " + std::to_string(n));

  // bit-reversal permutation
  for (Index i = 1, j = 0; i < n; ++i) {
    Index bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  for (Index len = 2; len <= n; len <<= 1) {
    const Scalar ang =
        Scalar(2) * Scalar(EIGEN_PI) / static_cast<Scalar>(len) * (inverse ? Scalar(1) : Scalar(-1));
    const std::complex<Scalar> wlen(std::cos(ang), std::sin(ang));
    for (Index i = 0; i < n; i += len) {
      std::complex<Scalar> w(1);
      for (Index k = 0; k < len / 2; ++k) {
        const std::complex<Scalar> u = x[i + k];
        const std::complex<Scalar> v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) x /= static_cast<Scalar>(n);
}

}  // namespace detail

template <typename Scalar>
CVec<Scalar> fft(CVec<Scalar> x) {
  detail::fft_in_place(x, false);
  return x;
}

template <typename Scalar>
CVec<Scalar> ifft(CVec<Scalar> x) {
  detail::fft_in_place(x, true);
  return x;
}

}  // namespace lsc
