#include "dfl/partition.hpp"

#include <cmath>
#include <stdexcept>

#include "dfl/rng.hpp"

namespace dfl {

namespace {

// First k entries of a partial Fisher-Yates shuffle: k distinct picks.
std::vector<int> sample_without_replacement(std::vector<int> pool, std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.next_below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

FederatedPartition make_partition(std::span<const int> labels, int n_agents, double fraction,
                                  PartitionMode mode, std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (n_agents < 1) throw std::invalid_argument("make_partition: need at least one agent");
  const auto per_agent = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  if (per_agent < 1) throw std::invalid_argument("make_partition: fraction too small");
  if (per_agent > n) throw std::invalid_argument("make_partition: fraction too large");
  for (int v : labels)
    if (v < 0 || v >= kNumClasses) throw std::invalid_argument("make_partition: label outside 0..5");

  Rng rng(derive_seed(seed, 0x31));
  FederatedPartition part;
  part.mode = mode;
  part.indices.resize(n_agents);
  part.allowed.resize(n_agents);

  std::vector<int> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);

  for (int a = 0; a < n_agents; ++a) {
    if (mode == PartitionMode::iid) {
      part.allowed[a].fill(true);
      part.indices[a] = sample_without_replacement(all, per_agent, rng);
    } else {
      const int dropped = static_cast<int>(rng.next_below(kNumClasses));
      part.allowed[a].fill(true);
      part.allowed[a][dropped] = false;
      std::vector<int> pool;
      pool.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        if (labels[i] != dropped) pool.push_back(static_cast<int>(i));
      if (pool.size() < per_agent)
        throw std::runtime_error("make_partition: not enough samples in the allowed classes");
      part.indices[a] = sample_without_replacement(std::move(pool), per_agent, rng);
    }
  }
  return part;
}

}  // namespace dfl
