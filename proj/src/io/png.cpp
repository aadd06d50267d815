// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/io/png.hpp"

#include <zlib.h>

#include <cmath>
#include <cstring>
#include <fstream>

namespace lsc {

namespace {

void append_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::vector<std::uint8_t>& payload) {
  append_u32_be(out, static_cast<std::uint32_t>(payload.size()));
  std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), payload.begin(), payload.end());
  std::uint32_t crc = static_cast<std::uint32_t>(
      crc32(0, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start)));
  append_u32_be(out, crc);
}

}  // namespace

void write_png_gray(const std::filesystem::path& path, const GrayImage& img) {
  if (img.width <= 0 || img.height <= 0 ||
      img.pixels.size() != static_cast<std::size_t>(img.width * img.height))
    throw ValidationError("png writer: inconsistent image dimensions");

  // Scanlines with a leading filter byte (0 = none).
  std::vector<std::uint8_t> raw;
  raw.reserve(static_cast<std::size_t>(img.height * (img.width + 1)));
  for (Index y = 0; y < img.height; ++y) {
    raw.push_back(0);
    const std::uint8_t* row = img.pixels.data() + y * img.width;
    raw.insert(raw.end(), row, row + img.width);
  }

  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> deflated(bound);
  if (compress2(deflated.data(), &bound, raw.data(), static_cast<uLong>(raw.size()),
                Z_BEST_SPEED) != Z_OK)
    throw ValidationError("png writer: deflate failed");
  deflated.resize(bound);

  std::vector<std::uint8_t> file;
  static const std::uint8_t kSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  file.insert(file.end(), kSig, kSig + 8);

  std::vector<std::uint8_t> ihdr;
  append_u32_be(ihdr, static_cast<std::uint32_t>(img.width));
  append_u32_be(ihdr, static_cast<std::uint32_t>(img.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(0);  // color type: grayscale
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter
  ihdr.push_back(0);  // interlace
  append_chunk(file, "IHDR", ihdr);
  append_chunk(file, "IDAT", deflated);
  append_chunk(file, "IEND", {});

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot create png file: " + path.string());
  out.write(reinterpret_cast<const char*>(file.data()),
            static_cast<std::streamsize>(file.size()));
  if (!out) throw ValidationError("png write failed: " + path.string());
}

GrayImage matrix_to_gray(const Mat<double>& m) {
  if (m.rows() < 1 || m.cols() < 1)
    throw ValidationError("matrix_to_gray: empty matrix");
  if (!m.allFinite()) throw ValidationError("matrix_to_gray: non-finite values");

  double lo = m.minCoeff();
  double hi = m.maxCoeff();
  GrayImage img;
  img.width = m.cols();
  img.height = m.rows();
  img.pixels.assign(static_cast<std::size_t>(img.width * img.height), 0);
  if (hi > lo) {
    double scale = 255.0 / (hi - lo);
    for (Index r = 0; r < m.rows(); ++r) {
      // Row 0 of the matrix (lowest frequency) lands at the image bottom.
      Index y = img.height - 1 - r;
      for (Index c = 0; c < m.cols(); ++c) {
        double v = (m(r, c) - lo) * scale;
        img.pixels[static_cast<std::size_t>(y * img.width + c)] =
            static_cast<std::uint8_t>(std::lround(v));
      }
    }
  }
  return img;
}

}  // namespace lsc
