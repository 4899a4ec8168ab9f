#pragma once

#include <cmath>
#include <numbers>
#include <utility>

#include "vprop/linalg.hpp"

namespace vprop {

/// Gauss-Hermite rule: integral e^{-t^2} g(t) dt ~= sum_i w_i g(x_i).
/// Nodes are exactly symmetric about 0 and the weights sum to sqrt(pi).
class QuadratureRule {
public:
  static QuadratureRule gauss_hermite(int order);

  int order() const { return static_cast<int>(nodes_.size()); }
  const Vec& nodes() const { return nodes_; }
  const Vec& weights() const { return weights_; }

  /// E_{a ~ N(mean, var)}[ g(a) ]; var = 0 degenerates to g(mean).
  template <class G>
  double expect(double mean, double var, G&& g) const {
    if (!(var > 0.0)) return g(mean);
    const double scale = std::sqrt(2.0 * var);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < nodes_.size(); ++i)
      acc += weights_(i) * g(mean + scale * nodes_(i));
    return acc / std::sqrt(std::numbers::pi);
  }

private:
  QuadratureRule(Vec nodes, Vec weights)
      : nodes_(std::move(nodes)), weights_(std::move(weights)) {}

  Vec nodes_;
  Vec weights_;
};

}  // namespace vprop
