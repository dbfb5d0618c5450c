#include "dfl/protocols.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dfl/nn.hpp"

namespace dfl {

Batch draw_batch(Agent& agent, const FeatureSet& train, int batch_size) {
  if (agent.shard.empty()) throw std::runtime_error("draw_batch: agent has no local data");
  if (batch_size < 1) throw std::invalid_argument("draw_batch: batch size must be positive");
  const auto take = std::min<std::size_t>(batch_size, agent.shard.size());

  std::vector<int> pool = agent.shard;
  Batch batch;
  batch.features.resize(take * kInputDim);
  batch.labels.resize(take);
  for (std::size_t t = 0; t < take; ++t) {
    const std::size_t j = t + agent.learn_rng.next_below(pool.size() - t);
    std::swap(pool[t], pool[j]);
    const int idx = pool[t];
    const double* src = &train.features[static_cast<std::size_t>(idx) * kInputDim];
    std::copy(src, src + kInputDim, &batch.features[t * kInputDim]);
    batch.labels[t] = train.labels[idx];
  }
  return batch;
}

void apply_model_average(Model& m, const DeliveredUpdate& recv) {
  for (int l = 0; l < kLayerCount; ++l) {
    if (recv.layer_lost[l]) continue;
    auto layer = m.layer(l);
    for (const SparseEntry& e : recv.update.layers[l]) {
      if (e.index >= layer.size()) throw std::out_of_range("apply_model_average: bad index");
      layer[e.index] = 0.5 * (layer[e.index] + static_cast<double>(e.value));
    }
  }
}

void apply_sparse_gradient(Model& m, const DeliveredUpdate& recv, double mu) {
  for (int l = 0; l < kLayerCount; ++l) {
    if (recv.layer_lost[l]) continue;
    auto layer = m.layer(l);
    for (const SparseEntry& e : recv.update.layers[l]) {
      if (e.index >= layer.size()) throw std::out_of_range("apply_sparse_gradient: bad index");
      layer[e.index] -= mu * static_cast<double>(e.value);
    }
  }
}

Model overlay_model(const Model& base, const DeliveredUpdate& recv) {
  Model out = base;
  for (int l = 0; l < kLayerCount; ++l) {
    if (recv.layer_lost[l]) continue;
    auto layer = out.layer(l);
    for (const SparseEntry& e : recv.update.layers[l]) {
      if (e.index >= layer.size()) throw std::out_of_range("overlay_model: bad index");
      layer[e.index] = static_cast<double>(e.value);
    }
  }
  return out;
}

void combine_and_adapt(Model& m, const DeliveredUpdate& recv_model, const Gradients& own_grad,
                       const DeliveredUpdate& recv_grad, double mu) {
  apply_model_average(m, recv_model);
  sgd_step(m, own_grad, mu);
  apply_sparse_gradient(m, recv_grad, mu);
}

std::vector<std::pair<int, int>> random_matching(const Graph& g, Rng& rng) {
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const std::size_t j = i + rng.next_below(order.size() - i);
    std::swap(order[i], order[j]);
  }

  std::vector<std::uint8_t> matched(g.n, 0);
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> candidates;
  for (int a : order) {
    if (matched[a]) continue;
    candidates.clear();
    for (int b = 0; b < g.n; ++b)
      if (g.edge(a, b) && !matched[b]) candidates.push_back(b);
    if (candidates.empty()) continue;
    const int partner = candidates[rng.next_below(candidates.size())];
    matched[a] = matched[partner] = 1;
    pairs.emplace_back(a, partner);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

namespace {

void local_step(Agent& agent, const FeatureSet& train, const ProtocolParams& params) {
  const Batch batch = draw_batch(agent, train, params.batch_size);
  const LossGrad lg = loss_and_grad(agent.model, batch);
  sgd_step(agent.model, lg.grad, params.mu);
}

void note_message(RoundStats& st, int& pair_frames, const SparseUpdate& u,
                  const DeliveredUpdate& del, const ChannelModel& channel) {
  st.bytes += u.byte_size();
  pair_frames += total_frames(u, channel);
  st.frames_dropped += del.frames_dropped;
  st.layers_lost += del.layers_lost;
}

}  // namespace

RoundStats ego_round(std::vector<Agent>& agents, const FeatureSet& train,
                     const ProtocolParams& params) {
  for (Agent& agent : agents) local_step(agent, train, params);
  return {};
}

RoundStats gossip_round(std::vector<Agent>& agents, const Graph& g, const FeatureSet& train,
                        const ChannelModel& channel, const ProtocolParams& params,
                        Rng& pairing_rng, Rng& channel_rng) {
  RoundStats st;
  const auto pairs = random_matching(g, pairing_rng);
  for (const auto& [i, k] : pairs) {
    const auto upd_i = sparsify_topk(agents[i].model, params.k_model, UpdateKind::model);
    const auto upd_k = sparsify_topk(agents[k].model, params.k_model, UpdateKind::model);
    const auto del_ik = transmit(upd_i, channel, channel_rng);
    const auto del_ki = transmit(upd_k, channel, channel_rng);

    int pair_frames = 0;
    note_message(st, pair_frames, upd_i, del_ik, channel);
    note_message(st, pair_frames, upd_k, del_ki, channel);
    st.total_frames += pair_frames;
    st.max_pair_frames = std::max(st.max_pair_frames, pair_frames);
    ++st.negotiations;

    apply_model_average(agents[k].model, del_ik);
    apply_model_average(agents[i].model, del_ki);
  }
  for (Agent& agent : agents) local_step(agent, train, params);
  return st;
}

RoundStats diffusion_round(std::vector<Agent>& agents, const Graph& g, const FeatureSet& train,
                           const ChannelModel& channel, const ProtocolParams& params,
                           Rng& pairing_rng, Rng& channel_rng) {
  RoundStats st;
  const int n = static_cast<int>(agents.size());

  // One mini-batch per agent per round; it feeds both the agent's own
  // gradient and the gradient it evaluates for its partner.
  std::vector<Batch> batches;
  std::vector<Gradients> own_grads;
  batches.reserve(n);
  own_grads.reserve(n);
  for (Agent& agent : agents) {
    batches.push_back(draw_batch(agent, train, params.batch_size));
    own_grads.push_back(loss_and_grad(agent.model, batches.back()).grad);
  }

  const auto pairs = random_matching(g, pairing_rng);
  std::vector<std::uint8_t> negotiated(n, 0);
  for (const auto& [i, k] : pairs) {
    negotiated[i] = negotiated[k] = 1;

    // t=1,2: models cross the channel in both directions.
    const auto upd_i = sparsify_topk(agents[i].model, params.k_model, UpdateKind::model);
    const auto upd_k = sparsify_topk(agents[k].model, params.k_model, UpdateKind::model);
    const auto del_mi = transmit(upd_i, channel, channel_rng);  // i -> k
    const auto del_mk = transmit(upd_k, channel, channel_rng);  // k -> i

    // Each side evaluates its local loss at the model it received and
    // replies with that gradient.
    const Model at_k = overlay_model(agents[k].model, del_mi);
    const Gradients reply_from_k = loss_and_grad(at_k, batches[k]).grad;
    const Model at_i = overlay_model(agents[i].model, del_mk);
    const Gradients reply_from_i = loss_and_grad(at_i, batches[i]).grad;

    const auto upd_gk = sparsify_topk(reply_from_k, params.k_grad, UpdateKind::gradient);
    const auto upd_gi = sparsify_topk(reply_from_i, params.k_grad, UpdateKind::gradient);
    const auto del_gk = transmit(upd_gk, channel, channel_rng);  // k -> i
    const auto del_gi = transmit(upd_gi, channel, channel_rng);  // i -> k

    int pair_frames = 0;
    note_message(st, pair_frames, upd_i, del_mi, channel);
    note_message(st, pair_frames, upd_k, del_mk, channel);
    note_message(st, pair_frames, upd_gk, del_gk, channel);
    note_message(st, pair_frames, upd_gi, del_gi, channel);
    st.total_frames += pair_frames;
    st.max_pair_frames = std::max(st.max_pair_frames, pair_frames);
    ++st.negotiations;

    // t=3: combine-and-adapt on both sides.
    combine_and_adapt(agents[i].model, del_mk, own_grads[i], del_gk, params.mu);
    combine_and_adapt(agents[k].model, del_mi, own_grads[k], del_gi, params.mu);
  }

  for (int a = 0; a < n; ++a)
    if (!negotiated[a]) sgd_step(agents[a].model, own_grads[a], params.mu);
  return st;
}

}  // namespace dfl
