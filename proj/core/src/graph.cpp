#include "dfl/graph.hpp"

#include <stdexcept>

namespace dfl {

int Graph::degree(int i) const {
  int d = 0;
  for (int j = 0; j < n; ++j) d += edge(i, j) ? 1 : 0;
  return d;
}

std::vector<int> Graph::neighbors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < n; ++j)
    if (edge(i, j)) out.push_back(j);
  return out;
}

Graph ring_topology(int n) {
  if (n < 3) throw std::invalid_argument("ring_topology: need at least 3 nodes");
  Graph g;
  g.n = n;
  g.adj.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    const int next = (i + 1) % n;
    g.adj[static_cast<std::size_t>(i) * n + next] = 1;
    g.adj[static_cast<std::size_t>(next) * n + i] = 1;
  }
  return g;
}

bool is_connected(const Graph& g) {
  if (g.n == 0) return false;
  std::vector<std::uint8_t> seen(g.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int j = 0; j < g.n; ++j) {
      if (g.edge(v, j) && !seen[j]) {
        seen[j] = 1;
        ++visited;
        stack.push_back(j);
      }
    }
  }
  return visited == g.n;
}

}  // namespace dfl
