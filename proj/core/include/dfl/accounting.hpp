#pragma once

#include <cstdint>
#include <span>

#include "dfl/channel.hpp"
#include "dfl/sparse.hpp"

namespace dfl {

enum class TimingMode { nominal, derived };

struct RoundCost {
  std::int64_t duration_ms = 0;
  double kilobytes = 0.0;  // 1 kB = 1000 B
};

// Cost of one negotiation's message set. An empty set is an ego round.
// Nominal timing charges the reported 30 ms per cooperative round (10 ms
// compute-only for ego); derived timing charges the actual frame budget,
// sum(frames) * tti + compute_ms.
RoundCost round_accounting(std::span<const SparseUpdate> messages, TimingMode mode,
                           const ChannelModel& channel, int compute_ms = 10);

}  // namespace dfl
