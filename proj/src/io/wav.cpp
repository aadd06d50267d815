// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/io/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace lsc {

namespace {

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
};

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t read_u16(std::istream& in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<char*>(b), 4);
}

void write_u16(std::ostream& out, std::uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff)};
  out.write(reinterpret_cast<char*>(b), 2);
}

// Walks RIFF chunks up to the data chunk; returns the fmt and the data size,
// leaving the stream positioned at the first data byte.
void parse_header(std::istream& in, const std::filesystem::path& path, FmtChunk* fmt,
                  std::uint32_t* data_bytes) {
  char tag[4];
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "RIFF", 4) != 0)
    throw ValidationError("not a RIFF file: " + path.string());
  read_u32(in);  // overall size, unused
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "WAVE", 4) != 0)
    throw ValidationError("not a WAVE file: " + path.string());

  bool have_fmt = false;
  while (in.read(tag, 4)) {
    std::uint32_t size = read_u32(in);
    if (!in) break;
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (size < 16) throw ValidationError("short fmt chunk: " + path.string());
      fmt->format = read_u16(in);
      fmt->channels = read_u16(in);
      fmt->sample_rate = read_u32(in);
      read_u32(in);  // byte rate
      read_u16(in);  // block align
      fmt->bits_per_sample = read_u16(in);
      in.seekg(size - 16 + (size & 1), std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw ValidationError("data chunk before fmt: " + path.string());
      *data_bytes = size;
      return;
    } else {
      in.seekg(size + (size & 1), std::ios::cur);
    }
  }
  throw ValidationError("no data chunk found: " + path.string());
}

void check_fmt(const FmtChunk& fmt, const std::filesystem::path& path) {
  if (fmt.format != 1)
    throw ValidationError("unsupported wav encoding (need PCM): " + path.string());
  if (fmt.channels != 1)
    throw ValidationError("unsupported channel count (need mono): " + path.string());
  if (fmt.bits_per_sample != 16)
    throw ValidationError("unsupported sample width (need 16-bit): " + path.string());
}

}  // namespace

WavInfo wav_info(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open wav file: " + path.string());
  FmtChunk fmt;
  std::uint32_t data_bytes = 0;
  parse_header(in, path, &fmt, &data_bytes);
  check_fmt(fmt, path);
  WavInfo info;
  info.sample_rate = static_cast<int>(fmt.sample_rate);
  info.num_samples = static_cast<Index>(data_bytes / 2);
  return info;
}

Waveform read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open wav file: " + path.string());
  FmtChunk fmt;
  std::uint32_t data_bytes = 0;
  parse_header(in, path, &fmt, &data_bytes);
  check_fmt(fmt, path);

  Index n = static_cast<Index>(data_bytes / 2);
  std::vector<std::int16_t> pcm(static_cast<std::size_t>(n));
  in.read(reinterpret_cast<char*>(pcm.data()), static_cast<std::streamsize>(data_bytes));
  if (in.gcount() != static_cast<std::streamsize>(data_bytes))
    throw ValidationError("truncated wav data: " + path.string());

  Waveform w;
  w.sample_rate = static_cast<int>(fmt.sample_rate);
  w.samples.resize(n);
  for (Index i = 0; i < n; ++i) w.samples[i] = pcm[static_cast<std::size_t>(i)] / 32768.0;
  return w;
}

void write_wav(const std::filesystem::path& path, const Waveform& w) {
  if (w.sample_rate <= 0) throw ValidationError("wav writer: sample rate must be positive");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot create wav file: " + path.string());

  std::uint32_t data_bytes = static_cast<std::uint32_t>(w.samples.size() * 2);
  out.write("RIFF", 4);
  write_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_u32(out, 16);
  write_u16(out, 1);  // PCM
  write_u16(out, 1);  // mono
  write_u32(out, static_cast<std::uint32_t>(w.sample_rate));
  write_u32(out, static_cast<std::uint32_t>(w.sample_rate * 2));
  write_u16(out, 2);
  write_u16(out, 16);
  out.write("data", 4);
  write_u32(out, data_bytes);

  for (Index i = 0; i < w.samples.size(); ++i) {
    double x = std::clamp(w.samples[i], -1.0, 1.0);
    long v = std::lround(x * 32767.0);
    v = std::clamp(v, -32768L, 32767L);
    write_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  if (!out) throw ValidationError("wav write failed: " + path.string());
}

}  // namespace lsc
