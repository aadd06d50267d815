// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lsc {

using Index = Eigen::Index;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Data/format problems: bad files, bad shapes, contract violations (CLI exit 2).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failures: non-finite loss and friends (CLI exit 3).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Process-wide worker count for batch/featurization fan-out. 0 = autodetect.
void set_num_workers(int n);
int num_workers();

// Runs fn(begin, end, worker) over contiguous chunks of [0, n).
// Results must not depend on the chunking; callers that reduce across
// items must do so in item order afterwards.
void parallel_for(Index n, const std::function<void(Index, Index, int)>& fn);

}  // namespace lsc
