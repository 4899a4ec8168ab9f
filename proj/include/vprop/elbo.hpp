#pragma once

#include "vprop/logreg.hpp"
#include "vprop/predictive.hpp"
#include "vprop/quadrature.hpp"
#include "vprop/synthetic.hpp"

namespace vprop {

struct ElboEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for deterministic estimators
  int k_used = 0;
};

/// KL( N(mu, diag(var)) || N(0, I/lambda) ), closed form.
double kl_diag_to_prior(const Vec& mu, const Vec& var, double lambda);

/// KL( N(mu, prec^{-1}) || N(0, I/lambda) ), closed form.
double kl_full_to_prior(const Vec& mu, const Mat& prec, double lambda);

/// Monte-Carlo ELBO: mean of -f over k posterior draws minus the analytic
/// KL-to-prior term. The std error covers only the sampled likelihood part.
ElboEstimate elbo_mc(const Objective& obj, const GaussianPosterior& post,
                     double lambda, int k, RngStream& rng);

/// Deterministic ELBO for logistic regression under a factorized Gaussian:
/// each datapoint needs only a 1-D integral over its logit
/// a_i ~ N(x_i'mu, sum_d x_id^2 var_d), done by Gauss-Hermite.
ElboEstimate elbo_quadrature(const LogisticRegression& obj, const Vec& mu,
                             const Vec& var, double lambda,
                             const QuadratureRule& rule);

/// Dispatcher used by generic callers; throws CapabilityError when the
/// objective is not logistic regression.
ElboEstimate elbo_quadrature(const Objective& obj, const Vec& mu,
                             const Vec& var, double lambda,
                             const QuadratureRule& rule);

/// Exact ELBO for the quadratic fixture (Gaussian expectations in closed form).
ElboEstimate elbo_exact_quadratic(const QuadraticObjective& obj,
                                  const GaussianPosterior& post, double lambda);

/// Quadrature expectations of f, grad f and diag hess f under N(mu, diag(var))
/// for logistic regression. These power the deterministic ELBO gradient and
/// the identity checks between the two gradient routes.
double expected_nll_quadrature(const LogisticRegression& obj, const Vec& mu,
                               const Vec& var, const QuadratureRule& rule);
Vec expected_grad_quadrature(const LogisticRegression& obj, const Vec& mu,
                             const Vec& var, const QuadratureRule& rule);
Vec expected_hessian_diag_quadrature(const LogisticRegression& obj,
                                     const Vec& mu, const Vec& var,
                                     const QuadratureRule& rule);

struct ElboGradients {
  Vec mu;   // d elbo / d mu
  Vec var;  // d elbo / d sigma^2
};

/// Analytic gradient of the quadrature ELBO with respect to (mu, sigma^2).
ElboGradients elbo_quadrature_grads(const LogisticRegression& obj,
                                    const Vec& mu, const Vec& var,
                                    double lambda, const QuadratureRule& rule);

}  // namespace vprop
