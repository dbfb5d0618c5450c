#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace dfl {

// Classifier geometry: 1344 pooled radar features -> 18 hidden (ReLU) -> 6
// classes (softmax). Two trainable dense layers, 24,324 parameters total.
inline constexpr int kInputDim = 1344;
inline constexpr int kHiddenDim = 18;
inline constexpr int kNumClasses = 6;

inline constexpr int kLayerCount = 4;
inline constexpr std::array<int, kLayerCount> kLayerSizes = {
    kInputDim * kHiddenDim, kHiddenDim, kHiddenDim * kNumClasses, kNumClasses};
inline constexpr std::array<int, kLayerCount> kLayerOffsets = {
    0,
    kInputDim * kHiddenDim,
    kInputDim * kHiddenDim + kHiddenDim,
    kInputDim * kHiddenDim + kHiddenDim + kHiddenDim * kNumClasses};
inline constexpr int kParamCount =
    kInputDim * kHiddenDim + kHiddenDim + kHiddenDim * kNumClasses + kNumClasses;
static_assert(kParamCount == 24324);

// The four parameter tensors of the classifier. Weight matrices are row-major
// (w1: input x hidden, w2: hidden x class). Gradients share the layout, so
// the same type carries both roles.
struct Model {
  std::vector<double> w1 = std::vector<double>(kInputDim * kHiddenDim, 0.0);
  std::vector<double> b1 = std::vector<double>(kHiddenDim, 0.0);
  std::vector<double> w2 = std::vector<double>(kHiddenDim * kNumClasses, 0.0);
  std::vector<double> b2 = std::vector<double>(kNumClasses, 0.0);

  std::span<double> layer(int l) {
    switch (l) {
      case 0: return w1;
      case 1: return b1;
      case 2: return w2;
      default: return b2;
    }
  }
  std::span<const double> layer(int l) const {
    switch (l) {
      case 0: return w1;
      case 1: return b1;
      case 2: return w2;
      default: return b2;
    }
  }

  bool all_finite() const;
};

using Gradients = Model;

struct Batch {
  std::vector<double> features;  // size() x kInputDim, row-major
  std::vector<int> labels;       // values in 0..kNumClasses-1

  int size() const { return static_cast<int>(labels.size()); }
};

}  // namespace dfl
