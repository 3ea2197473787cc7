#pragma once

#include <optional>

#include <Eigen/Core>

namespace famcorr::stats {

using Eigen::VectorXd;

// Fractional (average) ranks, 1-based: tied values share the mean of the
// positions their block occupies. ranks({10, 20, 20, 30}) = {1, 2.5, 2.5, 4}.
VectorXd ranks(const Eigen::Ref<const VectorXd>& values);

// Product-moment correlation. nullopt when fewer than two points or either
// coordinate has zero variance; otherwise clamped to [-1, 1].
std::optional<double> pearson(const Eigen::Ref<const VectorXd>& x,
                              const Eigen::Ref<const VectorXd>& y);

// Pearson of fractional ranks.
std::optional<double> spearman(const Eigen::Ref<const VectorXd>& x,
                               const Eigen::Ref<const VectorXd>& y);

// Slope of the least-squares line through (x, y). nullopt when x is
// degenerate.
std::optional<double> least_squares_slope(const Eigen::Ref<const VectorXd>& x,
                                          const Eigen::Ref<const VectorXd>& y);

// Shannon entropy in bits of weights renormalized to a distribution.
// nullopt when the weights sum to zero.
std::optional<double> entropy_bits(const Eigen::Ref<const VectorXd>& weights);

}  // namespace famcorr::stats
