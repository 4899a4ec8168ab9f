#include "vprop/synthetic.hpp"

#include <cmath>
#include <utility>

#include "vprop/logreg.hpp"
#include "vprop/rng.hpp"

namespace vprop {

QuadraticObjective::QuadraticObjective(Mat hess, Vec lin)
    : hess_(std::move(hess)), lin_(std::move(lin)) {
  require_symmetric(hess_, "QuadraticObjective");
  if (hess_.rows() != lin_.size())
    throw DimensionError("QuadraticObjective: size mismatch");
}

double QuadraticObjective::value(const Vec& theta) const {
  check_dim(theta, "quadratic value");
  return 0.5 * theta.dot(hess_ * theta) + lin_.dot(theta);
}

Vec QuadraticObjective::grad(const Vec& theta) const {
  check_dim(theta, "quadratic grad");
  return hess_ * theta + lin_;
}

Vec QuadraticObjective::hessian_diag(const Vec& theta) const {
  check_dim(theta, "quadratic hessian_diag");
  return hess_.diagonal();
}

Mat QuadraticObjective::hessian_full(const Vec& theta) const {
  check_dim(theta, "quadratic hessian_full");
  return hess_;
}

Vec ConjugateQuadratic::posterior_mean(double lambda) const {
  const Mat chol = cholesky_factor(posterior_precision(lambda));
  return -cholesky_solve(chol, objective->lin());
}

Mat ConjugateQuadratic::posterior_precision(double lambda) const {
  Mat p = objective->hess();
  p.diagonal().array() += lambda;
  return p;
}

double ConjugateQuadratic::log_evidence(double lambda) const {
  // integral exp(-f(theta)) N(theta | 0, I/lambda) dtheta, in closed form:
  // (d/2) log lambda - 1/2 log det(H + lambda I) + 1/2 c'(H + lambda I)^{-1} c
  const int d = objective->dim();
  const Mat chol = cholesky_factor(posterior_precision(lambda));
  const Vec mean = -cholesky_solve(chol, objective->lin());
  return 0.5 * d * std::log(lambda) - 0.5 * cholesky_log_det(chol) -
         0.5 * objective->lin().dot(mean);
}

ConjugateQuadratic gen_conjugate_quadratic(int d, std::uint64_t seed) {
  if (d < 1) throw DimensionError("gen_conjugate_quadratic: d must be >= 1");
  RngStream rng(seed);
  Mat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.next_normal();
  Mat hess = m.transpose() * m + Mat::Identity(d, d);
  hess = 0.5 * (hess + hess.transpose());  // exact symmetry
  Vec lin = sample_std_normal(rng, d);
  return {std::make_shared<QuadraticObjective>(std::move(hess), std::move(lin))};
}

ConjugateQuadratic gen_conjugate_quadratic_diag(int d, std::uint64_t seed) {
  if (d < 1) throw DimensionError("gen_conjugate_quadratic_diag: d must be >= 1");
  RngStream rng(seed);
  Mat hess = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = rng.next_normal();
    hess(i, i) = 1.0 + m * m;
  }
  Vec lin = sample_std_normal(rng, d);
  return {std::make_shared<QuadraticObjective>(std::move(hess), std::move(lin))};
}

Dataset gen_logreg_synthetic(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw DimensionError("gen_logreg_synthetic: n, d >= 1");
  RngStream rng(seed);
  Vec theta_star = sample_std_normal(rng, d);
  Dataset out;
  out.X.resize(n, d);
  out.y.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) out.X(i, j) = rng.next_normal();
    const double p = sigmoid(out.X.row(i).dot(theta_star));
    out.y(i) = rng.next_unit() <= p ? 1.0 : -1.0;
  }
  return out;
}

}  // namespace vprop
