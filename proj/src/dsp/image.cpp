// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/dsp/image.hpp"

#include <cmath>

namespace lsc {

Mat<double> to_decibels(const Mat<double>& values, double floor_db) {
  if (!(floor_db < 0.0))
    throw ValidationError("to_decibels: floor_db must be negative, got " +
                          std::to_string(floor_db));
  Mat<double> db =
      20.0 * values.array().max(1e-10).log10();
  const double top = db.maxCoeff();
  return db.array().max(top - std::abs(floor_db)).min(top).matrix();
}

Mat<double> resize_bilinear(const Mat<double>& in, Index out_rows, Index out_cols) {
  if (in.rows() < 1 || in.cols() < 1 || out_rows < 1 || out_cols < 1)
    throw ValidationError("resize: empty input or output");
  const auto src = [](Index dst, Index out_n, Index in_n) {
    if (out_n == 1 || in_n == 1) return 0.0;
    return static_cast<double>(dst) * static_cast<double>(in_n - 1) /
           static_cast<double>(out_n - 1);
  };
  Mat<double> out(out_rows, out_cols);
  for (Index r = 0; r < out_rows; ++r) {
    const double fr = src(r, out_rows, in.rows());
    const Index r0 = static_cast<Index>(fr);
    const Index r1 = std::min(r0 + 1, in.rows() - 1);
    const double wr = fr - static_cast<double>(r0);
    for (Index c = 0; c < out_cols; ++c) {
      const double fc = src(c, out_cols, in.cols());
      const Index c0 = static_cast<Index>(fc);
      const Index c1 = std::min(c0 + 1, in.cols() - 1);
      const double wc = fc - static_cast<double>(c0);
      out(r, c) = (1.0 - wr) * ((1.0 - wc) * in(r0, c0) + wc * in(r0, c1)) +
                  wr * ((1.0 - wc) * in(r1, c0) + wc * in(r1, c1));
    }
  }
  return out;
}

Tensor<float> to_feature_image(const Mat<double>& m) {
  if (m.rows() < 2 || m.cols() < 2)
    throw ValidationError("feature image: input must be at least 2x2, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  if (!m.allFinite()) throw ValidationError("feature image: non-finite input");

  Mat<double> r = resize_bilinear(m, kFeatureImageSize, kFeatureImageSize);
  const double lo = r.minCoeff(), hi = r.maxCoeff();
  if (hi > lo)
    r = (r.array() - lo) / (hi - lo);
  else
    r.setZero();

  Tensor<float> img({3, kFeatureImageSize, kFeatureImageSize});
  const Index plane = kFeatureImageSize * kFeatureImageSize;
  for (Index y = 0; y < kFeatureImageSize; ++y)
    for (Index x = 0; x < kFeatureImageSize; ++x)
      img.data[y * kFeatureImageSize + x] = static_cast<float>(r(y, x));
  img.data.segment(plane, plane) = img.data.segment(0, plane);
  img.data.segment(2 * plane, plane) = img.data.segment(0, plane);
  return img;
}

}  // namespace lsc
