#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dfl/model.hpp"

namespace dfl {

enum class PartitionMode { iid, non_iid };

struct FederatedPartition {
  PartitionMode mode = PartitionMode::iid;
  std::vector<std::vector<int>> indices;                 // per-agent sample indices, distinct
  std::vector<std::array<bool, kNumClasses>> allowed;    // per-agent class mask
};

// Each agent samples round(fraction * labels.size()) indices independently
// (agents may overlap). IID draws from the whole split; non-IID first drops
// one class uniformly at random per agent and draws from the remaining five.
FederatedPartition make_partition(std::span<const int> labels, int n_agents, double fraction,
                                  PartitionMode mode, std::uint64_t seed);

}  // namespace dfl
