#include "dfl/dsgd.hpp"

#include <stdexcept>

namespace dfl {

std::vector<std::vector<double>> dsgd_step(const std::vector<std::vector<double>>& models,
                                           const MixingMatrix& mixing,
                                           const std::vector<std::vector<double>>& grads,
                                           double mu) {
  const std::size_t n = models.size();
  if (n != static_cast<std::size_t>(mixing.n) || grads.size() != n)
    throw std::invalid_argument("dsgd_step: model/mixing/gradient counts disagree");
  const std::size_t dim = n ? models[0].size() : 0;
  for (std::size_t i = 0; i < n; ++i)
    if (models[i].size() != dim || grads[i].size() != dim)
      throw std::invalid_argument("dsgd_step: parameter dimension mismatch");

  std::vector<std::vector<double>> next(n, std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double wij = mixing.at(static_cast<int>(i), static_cast<int>(j));
      if (wij == 0.0) continue;
      const auto& src = models[j];
      auto& dst = next[i];
      for (std::size_t d = 0; d < dim; ++d) dst[d] += wij * src[d];
    }
    const auto& g = grads[i];
    auto& dst = next[i];
    for (std::size_t d = 0; d < dim; ++d) dst[d] -= mu * g[d];
  }
  return next;
}

}  // namespace dfl
