#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dfl/channel.hpp"
#include "dfl/dataset.hpp"
#include "dfl/graph.hpp"
#include "dfl/model.hpp"
#include "dfl/rng.hpp"
#include "dfl/sparse.hpp"

namespace dfl {

enum class Protocol { ego, gossip, diffusion };

struct Agent {
  int id = 0;
  Model model;
  std::vector<int> shard;      // indices into the training FeatureSet
  std::vector<int> neighbors;  // from the Graph
  Rng learn_rng;               // consumed only by mini-batch draws

  Agent(int id_, Model m, std::vector<int> shard_, std::vector<int> neighbors_,
        std::uint64_t learn_seed)
      : id(id_),
        model(std::move(m)),
        shard(std::move(shard_)),
        neighbors(std::move(neighbors_)),
        learn_rng(learn_seed) {}
};

struct ProtocolParams {
  double mu = 0.025;
  int batch_size = 16;
  int k_model = 5750;
  int k_grad = 8000;
};

struct RoundStats {
  std::size_t bytes = 0;     // all messages of the round
  int negotiations = 0;      // matched pairs
  int total_frames = 0;
  int max_pair_frames = 0;   // frame budget of the slowest pair
  int frames_dropped = 0;
  int layers_lost = 0;
};

// min(batch_size, |shard|) distinct samples from the agent's shard.
Batch draw_batch(Agent& agent, const FeatureSet& train, int batch_size);

// --- sparse overlay primitives -------------------------------------------

// w[j] <- (w[j] + recv[j]) / 2 at delivered indices; lost layers untouched.
void apply_model_average(Model& m, const DeliveredUpdate& recv);

// w[j] <- w[j] - mu * recv[j] at delivered indices.
void apply_sparse_gradient(Model& m, const DeliveredUpdate& recv, double mu);

// Copy of `base` with delivered coordinates replaced by the received values;
// how a receiver reconstructs the sender's model.
Model overlay_model(const Model& base, const DeliveredUpdate& recv);

// One side of the diffusion computing round:
// W <- avg(W, recv model) - mu * (own grad + recv grad), overlay semantics.
void combine_and_adapt(Model& m, const DeliveredUpdate& recv_model, const Gradients& own_grad,
                       const DeliveredUpdate& recv_grad, double mu);

// Random maximal matching: agents are visited in random order and pick a
// uniform still-unmatched neighbor. Pairs come back sorted by initiator id;
// an agent negotiates at most once per round.
std::vector<std::pair<int, int>> random_matching(const Graph& g, Rng& rng);

// --- per-round drivers (synchronous barrier over all agents) --------------

RoundStats ego_round(std::vector<Agent>& agents, const FeatureSet& train,
                     const ProtocolParams& params);

// Matched pairs exchange sparsified models through the channel and average
// at the delivered support, then every agent takes one local SGD step.
RoundStats gossip_round(std::vector<Agent>& agents, const Graph& g, const FeatureSet& train,
                        const ChannelModel& channel, const ProtocolParams& params,
                        Rng& pairing_rng, Rng& channel_rng);

// Matched pairs run the request/reply negotiation (2 models + 2 gradients on
// the wire) and combine-and-adapt; unmatched agents fall back to a plain
// local step.
RoundStats diffusion_round(std::vector<Agent>& agents, const Graph& g, const FeatureSet& train,
                           const ChannelModel& channel, const ProtocolParams& params,
                           Rng& pairing_rng, Rng& channel_rng);

}  // namespace dfl
