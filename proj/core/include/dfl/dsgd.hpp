#pragma once

#include <vector>

#include "dfl/mixing.hpp"

namespace dfl {

// One synchronous decentralized SGD step on flat parameter vectors:
// W_i <- sum_j M[i][j] * W_j - mu * g_i. Dense and lossless; this is the
// reference engine the learning protocols are checked against.
std::vector<std::vector<double>> dsgd_step(const std::vector<std::vector<double>>& models,
                                           const MixingMatrix& mixing,
                                           const std::vector<std::vector<double>>& grads,
                                           double mu);

}  // namespace dfl
