#include "dfl/channel.hpp"

#include <stdexcept>

namespace dfl {

std::array<int, kLayerCount> frame_count(const SparseUpdate& u, const ChannelModel& c) {
  if (c.payload_bytes < 1) throw std::invalid_argument("frame_count: payload must be positive");
  std::array<int, kLayerCount> frames{};
  for (int l = 0; l < kLayerCount; ++l) {
    const std::size_t bytes = u.layer_bytes(l);
    frames[l] = static_cast<int>((bytes + c.payload_bytes - 1) / c.payload_bytes);
  }
  return frames;
}

int total_frames(const SparseUpdate& u, const ChannelModel& c) {
  int sum = 0;
  for (int f : frame_count(u, c)) sum += f;
  return sum;
}

DeliveredUpdate transmit(const SparseUpdate& u, const ChannelModel& c, Rng& rng) {
  if (c.bler < 0.0 || c.bler > 1.0) throw std::invalid_argument("transmit: bler outside [0,1]");
  const auto frames = frame_count(u, c);
  DeliveredUpdate out;
  out.update.kind = u.kind;
  for (int l = 0; l < kLayerCount; ++l) {
    bool lost = false;
    for (int f = 0; f < frames[l]; ++f) {
      if (rng.bernoulli(c.bler)) {
        lost = true;
        ++out.frames_dropped;
      }
    }
    out.frames_sent += frames[l];
    if (lost) {
      out.layer_lost[l] = true;
      ++out.layers_lost;
    } else {
      out.update.layers[l] = u.layers[l];
    }
  }
  return out;
}

}  // namespace dfl
