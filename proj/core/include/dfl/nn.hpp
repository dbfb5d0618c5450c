#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "dfl/model.hpp"

namespace dfl {

// Zero-mean uniform weights scaled by 1/sqrt(fan-in), biases zero.
// Deterministic in the seed.
Model init_model(std::uint64_t seed);

// Softmax class probabilities for one feature vector. Rejects non-finite
// input. The result sums to 1 with every entry in (0,1).
std::array<double, kNumClasses> forward(const Model& m, std::span<const double> features);

struct LossGrad {
  double loss = 0.0;
  Gradients grad;
};

// Mean cross-entropy over the batch and its exact backpropagated gradient.
LossGrad loss_and_grad(const Model& m, const Batch& batch);

// In-place p <- p - mu * g.
void sgd_step(Model& m, const Gradients& g, double mu);

// Mean cross-entropy over a full feature/label set (features.size() must be
// labels.size() * kInputDim).
double eval_loss(const Model& m, std::span<const double> features, std::span<const int> labels);

}  // namespace dfl
