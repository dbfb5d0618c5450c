#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dfl/model.hpp"

namespace dfl {

enum class UpdateKind { model, gradient };

// Wire entry: 4-byte flat index within its layer + 4-byte float value.
struct SparseEntry {
  std::uint32_t index;
  float value;
};
inline constexpr std::size_t kBytesPerEntry = 8;

struct SparseUpdate {
  UpdateKind kind = UpdateKind::model;
  std::array<std::vector<SparseEntry>, kLayerCount> layers;  // ascending index per layer

  std::size_t entry_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.size();
    return n;
  }
  std::size_t layer_bytes(int l) const { return layers[l].size() * kBytesPerEntry; }
  std::size_t byte_size() const { return entry_count() * kBytesPerEntry; }
};

// The k globally largest-magnitude parameters across all layers; ties go to
// the smaller flat index. Values are truncated to float32 as on the wire.
SparseUpdate sparsify_topk(const Model& tensors, int k, UpdateKind kind);

}  // namespace dfl
