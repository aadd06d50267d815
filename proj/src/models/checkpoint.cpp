// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/models/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace lsc {

namespace {

constexpr char kMagic[4] = {'L', 'S', 'N', 'D'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw ValidationError("checkpoint: truncated file");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f32(std::ostream& os, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(os, bits);
}

float get_f32(std::istream& is) {
  const std::uint32_t bits = get_u32(is);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

}  // namespace

void write_archive(const std::string& path, const std::vector<ArchiveEntry>& entries) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("checkpoint: cannot open " + path + " for writing");
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(entries.size()));
  for (const ArchiveEntry& e : entries) {
    put_u32(os, static_cast<std::uint32_t>(e.name.size()));
    os.write(e.name.data(), static_cast<std::streamsize>(e.name.size()));
    put_u32(os, static_cast<std::uint32_t>(e.shape.size()));
    std::size_t numel = 1;
    for (Index d : e.shape) {
      put_u32(os, static_cast<std::uint32_t>(d));
      numel *= static_cast<std::size_t>(d);
    }
    if (numel != e.values.size())
      throw ValidationError("checkpoint: entry " + e.name + " payload/shape mismatch");
    for (float v : e.values) put_f32(os, v);
  }
  if (!os) throw ValidationError("checkpoint: write failed for " + path);
}

std::vector<ArchiveEntry> read_archive(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("checkpoint: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw ValidationError("checkpoint: " + path + " is not an LSND archive");
  const std::uint32_t version = get_u32(is);
  if (version != kVersion)
    throw ValidationError("checkpoint: unsupported version " + std::to_string(version));
  const std::uint32_t count = get_u32(is);

  std::vector<ArchiveEntry> entries;
  entries.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    ArchiveEntry e;
    const std::uint32_t name_len = get_u32(is);
    e.name.resize(name_len);
    is.read(e.name.data(), name_len);
    if (!is) throw ValidationError("checkpoint: truncated file");
    const std::uint32_t ndim = get_u32(is);
    std::size_t numel = 1;
    for (std::uint32_t d = 0; d < ndim; ++d) {
      e.shape.push_back(static_cast<Index>(get_u32(is)));
      numel *= static_cast<std::size_t>(e.shape.back());
    }
    e.values.resize(numel);
    for (std::size_t k = 0; k < numel; ++k) e.values[k] = get_f32(is);
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace lsc
