#include "famcorr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace famcorr::stats {

VectorXd ranks(const Eigen::Ref<const VectorXd>& values) {
  const auto n = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return values[a] < values[b]; });

  VectorXd out(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) tie; 1-based ranks i+1..j+1 average to
    // (i + j) / 2 + 1.
    const double rank = static_cast<double>(i + j) / 2.0 + 1.0;
    for (Eigen::Index k = i; k <= j; ++k) out[order[k]] = rank;
    i = j + 1;
  }
  return out;
}

std::optional<double> pearson(const Eigen::Ref<const VectorXd>& x,
                              const Eigen::Ref<const VectorXd>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const VectorXd cx = x.array() - x.mean();
  const VectorXd cy = y.array() - y.mean();
  const double sxx = cx.squaredNorm();
  const double syy = cy.squaredNorm();
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  const double r = cx.dot(cy) / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

std::optional<double> spearman(const Eigen::Ref<const VectorXd>& x,
                               const Eigen::Ref<const VectorXd>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  return pearson(ranks(x), ranks(y));
}

std::optional<double> least_squares_slope(const Eigen::Ref<const VectorXd>& x,
                                          const Eigen::Ref<const VectorXd>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const VectorXd cx = x.array() - x.mean();
  const double sxx = cx.squaredNorm();
  if (sxx == 0.0) return std::nullopt;
  const VectorXd cy = y.array() - y.mean();
  return cx.dot(cy) / sxx;
}

std::optional<double> entropy_bits(const Eigen::Ref<const VectorXd>& weights) {
  const double total = weights.sum();
  if (!(total > 0.0)) return std::nullopt;
  double bits = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    const double p = weights[i] / total;
    if (p > 0.0) bits -= p * std::log2(p);
  }
  return bits;
}

}  // namespace famcorr::stats
