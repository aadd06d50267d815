// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "lsc/common.hpp"

namespace lsc {

// Dense row-major (C order) tensor. grad stays empty until ensure_grad.
template <typename Scalar>
struct Tensor {
  std::vector<Index> shape;
  Vec<Scalar> data;
  Vec<Scalar> grad;

  using RowMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Tensor() = default;
  explicit Tensor(std::vector<Index> s) : shape(std::move(s)) {
    data.setZero(numel_of(shape));
  }

  static Index numel_of(const std::vector<Index>& s) {
    Index n = 1;
    for (Index d : s) {
      if (d < 0) throw ValidationError("tensor: negative dimension");
      n *= d;
    }
    return n;
  }

  Index numel() const { return data.size(); }
  Index ndim() const { return static_cast<Index>(shape.size()); }
  Index dim(Index i) const { return shape[static_cast<std::size_t>(i)]; }

  void reshape(std::vector<Index> s) {
    if (numel_of(s) != numel())
      throw ValidationError("tensor: reshape to incompatible element count");
    shape = std::move(s);
    if (grad.size() == data.size()) {
      // grad follows shape implicitly; nothing to move
    }
  }

  void ensure_grad() {
    if (grad.size() != data.size()) grad.setZero(data.size());
  }
  void zero_grad() {
    if (grad.size() > 0) grad.setZero();
  }
  bool has_grad() const { return grad.size() == data.size() && data.size() > 0; }

  Eigen::Map<RowMat> as_matrix(Index rows, Index cols) {
    if (rows * cols != numel()) throw ValidationError("tensor: bad matrix view shape");
    return Eigen::Map<RowMat>(data.data(), rows, cols);
  }
  Eigen::Map<const RowMat> as_matrix(Index rows, Index cols) const {
    if (rows * cols != numel()) throw ValidationError("tensor: bad matrix view shape");
    return Eigen::Map<const RowMat>(data.data(), rows, cols);
  }
  Eigen::Map<RowMat> grad_matrix(Index rows, Index cols) {
    ensure_grad();
    return Eigen::Map<RowMat>(grad.data(), rows, cols);
  }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }

  std::string shape_str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(shape[i]);
    }
    return s + "]";
  }
};

inline std::string shape_to_string(const std::vector<Index>& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

template <typename Scalar>
void check_shape(const Tensor<Scalar>& t, const std::vector<Index>& want,
                 const std::string& what) {
  if (t.shape != want)
    throw ValidationError(what + ": expected shape " + shape_to_string(want) + ", got " +
                          t.shape_str());
}

}  // namespace lsc
