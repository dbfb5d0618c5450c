#pragma once

#include <cstdint>
#include <vector>

namespace dfl {

struct Graph {
  int n = 0;
  std::vector<std::uint8_t> adj;  // n*n, symmetric, zero diagonal

  bool edge(int i, int j) const { return adj[static_cast<std::size_t>(i) * n + j] != 0; }
  int degree(int i) const;
  std::vector<int> neighbors(int i) const;
};

// Single cycle 0-1-...-(n-1)-0; every node has degree 2.
Graph ring_topology(int n);

bool is_connected(const Graph& g);

}  // namespace dfl
