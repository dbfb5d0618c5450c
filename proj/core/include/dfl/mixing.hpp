#pragma once

#include <vector>

#include "dfl/graph.hpp"

namespace dfl {

// Doubly stochastic consensus weights over a graph.
struct MixingMatrix {
  int n = 0;
  std::vector<double> w;  // n*n row-major

  double at(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
};

// Metropolis-Hastings weights: 1/(1 + max(deg_i, deg_j)) on edges, the
// diagonal absorbs the remainder. Requires a connected graph.
MixingMatrix metropolis_mixing(const Graph& g);

}  // namespace dfl
