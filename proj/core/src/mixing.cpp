#include "dfl/mixing.hpp"

#include <algorithm>
#include <stdexcept>

namespace dfl {

MixingMatrix metropolis_mixing(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("metropolis_mixing: graph must be connected");

  std::vector<int> deg(g.n);
  for (int i = 0; i < g.n; ++i) deg[i] = g.degree(i);

  MixingMatrix m;
  m.n = g.n;
  m.w.assign(static_cast<std::size_t>(g.n) * g.n, 0.0);
  for (int i = 0; i < g.n; ++i) {
    double off_sum = 0.0;
    for (int j = 0; j < g.n; ++j) {
      if (j == i || !g.edge(i, j)) continue;
      const double wij = 1.0 / (1.0 + std::max(deg[i], deg[j]));
      m.w[static_cast<std::size_t>(i) * g.n + j] = wij;
      off_sum += wij;
    }
    m.w[static_cast<std::size_t>(i) * g.n + i] = 1.0 - off_sum;
  }
  return m;
}

}  // namespace dfl
