#include "dfl/nn.hpp"

#include <cmath>
#include <stdexcept>

#include "dfl/rng.hpp"

namespace dfl {

bool Model::all_finite() const {
  for (int l = 0; l < kLayerCount; ++l)
    for (double v : layer(l))
      if (!std::isfinite(v)) return false;
  return true;
}

Model init_model(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x11));
  Model m;
  const double bound1 = 1.0 / std::sqrt(static_cast<double>(kInputDim));
  for (double& w : m.w1) w = bound1 * (2.0 * rng.next_double() - 1.0);
  const double bound2 = 1.0 / std::sqrt(static_cast<double>(kHiddenDim));
  for (double& w : m.w2) w = bound2 * (2.0 * rng.next_double() - 1.0);
  return m;
}

namespace {

// hidden = relu(x * w1 + b1), logits = hidden * w2 + b2. Callers pass
// pre-validated data; keeps the hot path free of per-element checks.
void affine_forward(const Model& m, const double* x, double* act, double* hidden,
                    double* logits) {
  for (int j = 0; j < kHiddenDim; ++j) act[j] = m.b1[j];
  for (int i = 0; i < kInputDim; ++i) {
    const double xi = x[i];
    const double* wrow = &m.w1[static_cast<std::size_t>(i) * kHiddenDim];
    for (int j = 0; j < kHiddenDim; ++j) act[j] += xi * wrow[j];
  }
  for (int j = 0; j < kHiddenDim; ++j) hidden[j] = act[j] > 0.0 ? act[j] : 0.0;
  for (int k = 0; k < kNumClasses; ++k) logits[k] = m.b2[k];
  for (int j = 0; j < kHiddenDim; ++j) {
    const double hj = hidden[j];
    const double* wrow = &m.w2[static_cast<std::size_t>(j) * kNumClasses];
    for (int k = 0; k < kNumClasses; ++k) logits[k] += hj * wrow[k];
  }
}

double log_sum_exp(const double* logits) {
  double mx = logits[0];
  for (int k = 1; k < kNumClasses; ++k) mx = std::max(mx, logits[k]);
  double s = 0.0;
  for (int k = 0; k < kNumClasses; ++k) s += std::exp(logits[k] - mx);
  return mx + std::log(s);
}

}  // namespace

std::array<double, kNumClasses> forward(const Model& m, std::span<const double> features) {
  if (features.size() != static_cast<std::size_t>(kInputDim))
    throw std::invalid_argument("forward: feature vector must have 1344 entries");
  for (double v : features)
    if (!std::isfinite(v)) throw std::invalid_argument("forward: non-finite input feature");

  double act[kHiddenDim], hidden[kHiddenDim], logits[kNumClasses];
  affine_forward(m, features.data(), act, hidden, logits);
  const double lse = log_sum_exp(logits);
  std::array<double, kNumClasses> probs{};
  for (int k = 0; k < kNumClasses; ++k) probs[k] = std::exp(logits[k] - lse);
  return probs;
}

LossGrad loss_and_grad(const Model& m, const Batch& batch) {
  const int n = batch.size();
  if (n < 1) throw std::invalid_argument("loss_and_grad: empty batch");
  if (batch.features.size() != static_cast<std::size_t>(n) * kInputDim)
    throw std::invalid_argument("loss_and_grad: feature/label size mismatch");

  LossGrad out;
  double loss_sum = 0.0;
  double act[kHiddenDim], hidden[kHiddenDim], logits[kNumClasses];
  double dlogits[kNumClasses], dhidden[kHiddenDim];

  for (int s = 0; s < n; ++s) {
    const int y = batch.labels[s];
    if (y < 0 || y >= kNumClasses)
      throw std::invalid_argument("loss_and_grad: label outside 0..5");
    const double* x = &batch.features[static_cast<std::size_t>(s) * kInputDim];
    affine_forward(m, x, act, hidden, logits);

    const double lse = log_sum_exp(logits);
    loss_sum += lse - logits[y];

    for (int k = 0; k < kNumClasses; ++k) dlogits[k] = std::exp(logits[k] - lse);
    dlogits[y] -= 1.0;

    for (int j = 0; j < kHiddenDim; ++j) {
      const double hj = hidden[j];
      const double* wrow = &m.w2[static_cast<std::size_t>(j) * kNumClasses];
      double* grow = &out.grad.w2[static_cast<std::size_t>(j) * kNumClasses];
      double dh = 0.0;
      for (int k = 0; k < kNumClasses; ++k) {
        grow[k] += hj * dlogits[k];
        dh += wrow[k] * dlogits[k];
      }
      dhidden[j] = act[j] > 0.0 ? dh : 0.0;
    }
    for (int k = 0; k < kNumClasses; ++k) out.grad.b2[k] += dlogits[k];

    for (int i = 0; i < kInputDim; ++i) {
      const double xi = x[i];
      double* grow = &out.grad.w1[static_cast<std::size_t>(i) * kHiddenDim];
      for (int j = 0; j < kHiddenDim; ++j) grow[j] += xi * dhidden[j];
    }
    for (int j = 0; j < kHiddenDim; ++j) out.grad.b1[j] += dhidden[j];
  }

  const double inv_n = 1.0 / n;
  out.loss = loss_sum * inv_n;
  for (int l = 0; l < kLayerCount; ++l)
    for (double& g : out.grad.layer(l)) g *= inv_n;
  if (!std::isfinite(out.loss)) throw std::runtime_error("loss_and_grad: non-finite loss");
  return out;
}

void sgd_step(Model& m, const Gradients& g, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("sgd_step: step size must be positive");
  for (int l = 0; l < kLayerCount; ++l) {
    auto dst = m.layer(l);
    auto src = g.layer(l);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= mu * src[i];
  }
}

double eval_loss(const Model& m, std::span<const double> features, std::span<const int> labels) {
  const std::size_t n = labels.size();
  if (n == 0) throw std::invalid_argument("eval_loss: empty dataset");
  if (features.size() != n * kInputDim)
    throw std::invalid_argument("eval_loss: feature/label size mismatch");

  double act[kHiddenDim], hidden[kHiddenDim], logits[kNumClasses];
  double loss_sum = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const int y = labels[s];
    if (y < 0 || y >= kNumClasses) throw std::invalid_argument("eval_loss: label outside 0..5");
    affine_forward(m, &features[s * kInputDim], act, hidden, logits);
    loss_sum += log_sum_exp(logits) - logits[y];
  }
  return loss_sum / static_cast<double>(n);
}

}  // namespace dfl
