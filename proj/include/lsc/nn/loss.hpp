// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cmath>
#include <vector>

#include "lsc/common.hpp"
#include "lsc/nn/tensor.hpp"

namespace lsc {

template <typename Scalar>
struct ClassWeights {
  Vec<Scalar> weights;

  void validate() const {
    for (Index i = 0; i < weights.size(); ++i)
      if (!(weights[i] > Scalar(0)))
        throw ValidationError("class weights must be positive");
  }
};

// Row-wise softmax with max subtraction.
template <typename Scalar>
Mat<Scalar> softmax(const Mat<Scalar>& logits) {
  Mat<Scalar> p(logits.rows(), logits.cols());
  for (Index i = 0; i < logits.rows(); ++i) {
    const Scalar mx = logits.row(i).maxCoeff();
    p.row(i) = (logits.row(i).array() - mx).exp();
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

template <typename Scalar>
struct LossResult {
  Scalar loss = Scalar(0);
  Tensor<Scalar> dlogits;
  Mat<Scalar> probs;  // [N,K], rows sum to 1
};

// loss = sum_i w[y_i] * (-log p_i[y_i]) / sum_i w[y_i]
template <typename Scalar>
LossResult<Scalar> weighted_softmax_cross_entropy(const Tensor<Scalar>& logits,
                                                  const std::vector<Index>& targets,
                                                  const ClassWeights<Scalar>& weights) {
  if (logits.ndim() != 2)
    throw ValidationError("cross_entropy: logits must be [N,K], got " + logits.shape_str());
  const Index N = logits.dim(0), K = logits.dim(1);
  if (static_cast<Index>(targets.size()) != N)
    throw ValidationError("cross_entropy: " + std::to_string(targets.size()) +
                          " targets for " + std::to_string(N) + " rows");
  if (weights.weights.size() != K)
    throw ValidationError("cross_entropy: weight count != class count");
  weights.validate();

  LossResult<Scalar> out;
  out.probs = softmax(Mat<Scalar>(logits.as_matrix(N, K)));
  out.dlogits = Tensor<Scalar>({N, K});
  auto dm = out.dlogits.as_matrix(N, K);

  double wsum = 0.0;
  double lsum = 0.0;
  for (Index i = 0; i < N; ++i) {
    const Index y = targets[static_cast<std::size_t>(i)];
    if (y < 0 || y >= K)
      throw ValidationError("cross_entropy: target " + std::to_string(y) +
                            " outside [0," + std::to_string(K) + ")");
    const double w = static_cast<double>(weights.weights[y]);
    wsum += w;
    // recompute the log-sum-exp instead of log(p) to keep it stable
    const Scalar mx = logits.as_matrix(N, K).row(i).maxCoeff();
    const double lse =
        std::log((logits.as_matrix(N, K).row(i).array() - mx).exp().sum()) +
        static_cast<double>(mx);
    lsum += w * (lse - static_cast<double>(logits.as_matrix(N, K)(i, y)));
  }
  out.loss = static_cast<Scalar>(lsum / wsum);

  for (Index i = 0; i < N; ++i) {
    const Index y = targets[static_cast<std::size_t>(i)];
    const Scalar w = weights.weights[y] / static_cast<Scalar>(wsum);
    for (Index k = 0; k < K; ++k)
      dm(i, k) = w * (out.probs(i, k) - (k == y ? Scalar(1) : Scalar(0)));
  }
  return out;
}

}  // namespace lsc
