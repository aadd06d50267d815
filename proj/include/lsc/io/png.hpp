// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "lsc/common.hpp"

namespace lsc {

// 8-bit grayscale image, row-major, row 0 at the top.
struct GrayImage {
  Index width = 0;
  Index height = 0;
  std::vector<std::uint8_t> pixels;  // height * width
};

void write_png_gray(const std::filesystem::path& path, const GrayImage& img);

// Maps a matrix to gray levels by min-max scaling (constant input -> all 0),
// flipping vertically so the last matrix row becomes the top image row.
GrayImage matrix_to_gray(const Mat<double>& m);

}  // namespace lsc
