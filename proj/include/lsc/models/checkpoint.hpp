// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "lsc/models/graph.hpp"

namespace lsc {

// One named tensor inside an LSND archive. Payload is always 32-bit
// little-endian floats regardless of the in-memory scalar type.
struct ArchiveEntry {
  std::string name;
  std::vector<Index> shape;
  std::vector<float> values;
};

std::vector<ArchiveEntry> read_archive(const std::string& path);
void write_archive(const std::string& path, const std::vector<ArchiveEntry>& entries);

// Serializes parameters and batch-norm running stats in graph order.
template <typename Scalar>
void save_checkpoint(ModelGraph<Scalar>& model, const std::string& path) {
  std::vector<ArchiveEntry> entries;
  for (Parameter<Scalar>* p : model.state()) {
    ArchiveEntry e;
    e.name = p->name;
    e.shape = p->value.shape;
    e.values.resize(static_cast<std::size_t>(p->value.numel()));
    for (Index i = 0; i < p->value.numel(); ++i) {
      const float v = static_cast<float>(p->value.data[i]);
      if (!std::isfinite(v))
        throw NumericError("checkpoint: non-finite value in " + p->name);
      e.values[static_cast<std::size_t>(i)] = v;
    }
    entries.push_back(std::move(e));
  }
  write_archive(path, entries);
}

// Archive names and shapes must match the model exactly.
template <typename Scalar>
void load_checkpoint(const std::string& path, ModelGraph<Scalar>& model) {
  const std::vector<ArchiveEntry> entries = read_archive(path);
  std::map<std::string, const ArchiveEntry*> by_name;
  for (const ArchiveEntry& e : entries) {
    if (!by_name.emplace(e.name, &e).second)
      throw ValidationError("checkpoint: duplicate entry " + e.name);
  }

  std::vector<Parameter<Scalar>*> params = model.state();
  for (Parameter<Scalar>* p : params) {
    auto it = by_name.find(p->name);
    if (it == by_name.end())
      throw ValidationError("checkpoint: missing parameter " + p->name);
    const ArchiveEntry& e = *it->second;
    if (e.shape != p->value.shape)
      throw ValidationError("checkpoint: shape mismatch for " + p->name + ": archive " +
                            shape_to_string(e.shape) + ", model " + p->value.shape_str());
    for (Index i = 0; i < p->value.numel(); ++i)
      p->value.data[i] = static_cast<Scalar>(e.values[static_cast<std::size_t>(i)]);
    by_name.erase(it);
  }
  if (!by_name.empty())
    throw ValidationError("checkpoint: unexpected entry " + by_name.begin()->first);
}

}  // namespace lsc
