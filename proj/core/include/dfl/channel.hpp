#pragma once

#include <array>

#include "dfl/rng.hpp"
#include "dfl/sparse.hpp"

namespace dfl {

// TDMA frame model of one D2D link.
struct ChannelModel {
  int tti_ms = 3;
  int payload_bytes = 1000;
  double bler = 1e-9;
};

// Frames needed per layer: ceil(layer_bytes / payload). Layers never share
// a frame.
std::array<int, kLayerCount> frame_count(const SparseUpdate& u, const ChannelModel& c);
int total_frames(const SparseUpdate& u, const ChannelModel& c);

struct DeliveredUpdate {
  SparseUpdate update;  // lost layers arrive empty
  std::array<bool, kLayerCount> layer_lost{};
  int frames_sent = 0;
  int frames_dropped = 0;
  int layers_lost = 0;
};

// Each frame drops independently with probability bler; one dropped frame
// voids the whole layer it belongs to. Delivered layers are bit-identical
// to what was sent.
DeliveredUpdate transmit(const SparseUpdate& u, const ChannelModel& c, Rng& rng);

}  // namespace dfl
