#include "dfl/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfl {

SparseUpdate sparsify_topk(const Model& tensors, int k, UpdateKind kind) {
  if (k < 1 || k > kParamCount)
    throw std::invalid_argument("sparsify_topk: k outside 1..24324");

  struct Ranked {
    double abs_value;
    int global_index;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(kParamCount);
  for (int l = 0; l < kLayerCount; ++l) {
    const auto layer = tensors.layer(l);
    for (int i = 0; i < static_cast<int>(layer.size()); ++i)
      ranked.push_back({std::abs(layer[i]), kLayerOffsets[l] + i});
  }

  const auto better = [](const Ranked& a, const Ranked& b) {
    if (a.abs_value != b.abs_value) return a.abs_value > b.abs_value;
    return a.global_index < b.global_index;
  };
  std::nth_element(ranked.begin(), ranked.begin() + (k - 1), ranked.end(), better);
  ranked.resize(k);
  std::sort(ranked.begin(), ranked.end(),
            [](const Ranked& a, const Ranked& b) { return a.global_index < b.global_index; });

  SparseUpdate out;
  out.kind = kind;
  for (const Ranked& r : ranked) {
    int l = kLayerCount - 1;
    while (r.global_index < kLayerOffsets[l]) --l;
    const int local = r.global_index - kLayerOffsets[l];
    out.layers[l].push_back({static_cast<std::uint32_t>(local),
                             static_cast<float>(tensors.layer(l)[local])});
  }
  return out;
}

}  // namespace dfl
