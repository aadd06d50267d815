// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <fstream>

#include "doctest.h"
#include "lsc/io/png.hpp"
#include "lsc/io/wav.hpp"
#include "support/oracles.hpp"

using namespace lsc;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("wav round-trip stays within 16-bit quantization") {
  test::TempDir dir("wav_rt");
  Waveform w;
  w.sample_rate = 8000;
  w.samples.resize(8000);
  for (Index i = 0; i < w.size(); ++i)
    w.samples[i] = 0.8 * std::sin(2.0 * EIGEN_PI * 440.0 * i / 8000.0);

  const auto path = dir.path / "tone.wav";
  write_wav(path, w);
  const Waveform back = read_wav(path);
  CHECK(back.sample_rate == 8000);
  REQUIRE(back.size() == w.size());
  // encode rounds x*32767, decode divides by 32768: half a step of rounding
  // plus the scale mismatch, at most 1.5/32768 for |x| <= 1
  CHECK((back.samples - w.samples).cwiseAbs().maxCoeff() <= 1.5 / 32768.0 + 1e-12);

  const WavInfo info = wav_info(path);
  CHECK(info.sample_rate == 8000);
  CHECK(info.num_samples == 8000);
}

TEST_CASE("wav writer clamps out-of-range samples") {
  test::TempDir dir("wav_clamp");
  Waveform w;
  w.sample_rate = 8000;
  w.samples.resize(3);
  w.samples << 2.0, -2.0, 0.0;
  const auto path = dir.path / "clip.wav";
  write_wav(path, w);
  const Waveform back = read_wav(path);
  CHECK(back.samples[0] == 32767.0 / 32768.0);
  CHECK(back.samples[1] == -32767.0 / 32768.0);
  CHECK(back.samples[2] == 0.0);
}

TEST_CASE("wav reader rejects broken files") {
  test::TempDir dir("wav_bad");
  const auto path = dir.path / "bad.wav";
  std::ofstream(path, std::ios::binary) << "RIFFxxxxNOTW";
  CHECK_THROWS_AS(read_wav(path), ValidationError);
  CHECK_THROWS_AS(read_wav(dir.path / "missing.wav"), ValidationError);

  // truncate a valid file mid-payload
  Waveform w;
  w.sample_rate = 8000;
  w.samples = Vec<double>::Zero(1000);
  write_wav(dir.path / "ok.wav", w);
  const std::string bytes = slurp(dir.path / "ok.wav");
  std::ofstream(dir.path / "cut.wav", std::ios::binary)
      << bytes.substr(0, bytes.size() / 2);
  CHECK_THROWS_AS(read_wav(dir.path / "cut.wav"), ValidationError);
}

TEST_CASE("matrix_to_gray scales and flips") {
  Mat<double> m(2, 3);
  m << 0.0, 1.0, 2.0,
       6.0, 8.0, 10.0;
  const GrayImage img = matrix_to_gray(m);
  CHECK(img.width == 3);
  CHECK(img.height == 2);
  // top image row is the last matrix row
  CHECK(img.pixels[0] == 153);   // 6/10*255 rounded
  CHECK(img.pixels[2] == 255);
  CHECK(img.pixels[3] == 0);     // bottom-left = m(0,0) = min
  CHECK(img.pixels[5] == 51);    // 2/10*255

  const GrayImage flat = matrix_to_gray(Mat<double>::Constant(4, 4, 7.0));
  for (std::uint8_t p : flat.pixels) CHECK(p == 0);
}

TEST_CASE("png writer emits identical bytes for identical input") {
  test::TempDir dir("png_det");
  Mat<double> m(64, 48);
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      m(r, c) = std::sin(0.1 * static_cast<double>(r * 48 + c));
  write_png_gray(dir.path / "a.png", matrix_to_gray(m));
  write_png_gray(dir.path / "b.png", matrix_to_gray(m));
  const std::string a = slurp(dir.path / "a.png");
  CHECK(a == slurp(dir.path / "b.png"));
  CHECK(a.size() > 8);
  CHECK(a.substr(1, 3) == "PNG");
}
