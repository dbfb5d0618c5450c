#include "dfl/accounting.hpp"

namespace dfl {

RoundCost round_accounting(std::span<const SparseUpdate> messages, TimingMode mode,
                           const ChannelModel& channel, int compute_ms) {
  RoundCost cost;
  std::size_t bytes = 0;
  int frames = 0;
  for (const SparseUpdate& u : messages) {
    bytes += u.byte_size();
    frames += total_frames(u, channel);
  }
  cost.kilobytes = static_cast<double>(bytes) / 1000.0;
  if (mode == TimingMode::nominal) {
    cost.duration_ms = messages.empty() ? 10 : 30;
  } else {
    cost.duration_ms = static_cast<std::int64_t>(frames) * channel.tti_ms + compute_ms;
  }
  return cost;
}

}  // namespace dfl
