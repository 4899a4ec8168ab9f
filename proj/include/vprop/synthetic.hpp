#pragma once

#include <cstdint>
#include <memory>

#include "vprop/dataset.hpp"
#include "vprop/objective.hpp"

namespace vprop {

/// f(theta) = 1/2 theta' H theta + c' theta with H symmetric positive
/// definite. With the Gaussian prior N(0, I/lambda) the posterior is Gaussian
/// and everything about it is analytic, which makes this the workhorse
/// fixture for exactness checks.
class QuadraticObjective : public Objective {
public:
  QuadraticObjective(Mat hess, Vec lin);

  int dim() const override { return static_cast<int>(lin_.size()); }
  double value(const Vec& theta) const override;
  Vec grad(const Vec& theta) const override;
  bool has_hessian_diag() const override { return true; }
  bool has_hessian_full() const override { return true; }
  Vec hessian_diag(const Vec& theta) const override;
  Mat hessian_full(const Vec& theta) const override;

  const Mat& hess() const { return hess_; }
  const Vec& lin() const { return lin_; }

private:
  Mat hess_;
  Vec lin_;
};

/// A generated quadratic problem together with its analytic posterior.
struct ConjugateQuadratic {
  std::shared_ptr<QuadraticObjective> objective;

  Vec posterior_mean(double lambda) const;     // -(H + lambda I)^{-1} c
  Mat posterior_precision(double lambda) const;  // H + lambda I
  /// log of the evidence integral(exp(-f) N(0, I/lambda)); the exact maximum
  /// of the ELBO whenever the variational family contains the posterior.
  double log_evidence(double lambda) const;
};

/// Random SPD instance, H = M'M + I with standard-normal M.
ConjugateQuadratic gen_conjugate_quadratic(int d, std::uint64_t seed);

/// Diagonal-H instance, for mean-field exactness checks.
ConjugateQuadratic gen_conjugate_quadratic_diag(int d, std::uint64_t seed);

/// Standard-normal features; labels drawn from a logistic model with a fixed
/// random parameter vector. Deterministic given the seed.
Dataset gen_logreg_synthetic(int n, int d, std::uint64_t seed);

}  // namespace vprop
