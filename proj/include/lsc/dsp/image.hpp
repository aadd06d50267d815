// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "lsc/common.hpp"
#include "lsc/nn/tensor.hpp"

namespace lsc {

constexpr Index kFeatureImageSize = 224;

// 20*log10(max(v, 1e-10)) clamped to [max - |floor_db|, max].
Mat<double> to_decibels(const Mat<double>& values, double floor_db = -80.0);

// Align-corners bilinear resampling.
Mat<double> resize_bilinear(const Mat<double>& in, Index out_rows, Index out_cols);

// Bilinear resize to 224x224, min-max normalize to [0,1] (all zeros when
// the input is constant), replicate to 3 identical channels.
Tensor<float> to_feature_image(const Mat<double>& m);

}  // namespace lsc
