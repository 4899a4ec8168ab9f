#include "vprop/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numbers>
#include <vector>

namespace vprop {

// Golub-Welsch: eigen-decompose the Jacobi matrix of the Hermite recurrence.
// The eigenvalues are the nodes; weights are sqrt(pi) times the squared first
// eigenvector components. Afterwards node/weight pairs are mirrored so the
// rule is symmetric to the last bit.
QuadratureRule QuadratureRule::gauss_hermite(int order) {
  if (order < 1) throw Error("gauss_hermite: order must be >= 1");

  Mat jacobi = Mat::Zero(order, order);
  for (int i = 0; i + 1 < order; ++i) {
    const double off = std::sqrt(0.5 * (i + 1));
    jacobi(i, i + 1) = off;
    jacobi(i + 1, i) = off;
  }

  Eigen::SelfAdjointEigenSolver<Mat> solver(jacobi);
  if (solver.info() != Eigen::Success)
    throw Error("gauss_hermite: eigen decomposition failed");

  std::vector<std::pair<double, double>> rule(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule[static_cast<std::size_t>(i)] = {solver.eigenvalues()(i),
                                         std::sqrt(std::numbers::pi) * v0 * v0};
  }
  std::sort(rule.begin(), rule.end());

  Vec nodes(order), weights(order);
  for (int i = 0; i < order; ++i) {
    nodes(i) = rule[static_cast<std::size_t>(i)].first;
    weights(i) = rule[static_cast<std::size_t>(i)].second;
  }
  // enforce exact symmetry
  for (int i = 0, j = order - 1; i < j; ++i, --j) {
    const double x = 0.5 * (nodes(j) - nodes(i));
    nodes(i) = -x;
    nodes(j) = x;
    const double w = 0.5 * (weights(i) + weights(j));
    weights(i) = w;
    weights(j) = w;
  }
  if (order % 2 == 1) nodes(order / 2) = 0.0;

  return QuadratureRule(std::move(nodes), std::move(weights));
}

}  // namespace vprop
