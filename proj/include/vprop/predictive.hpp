#pragma once

#include <variant>

#include "vprop/objective.hpp"
#include "vprop/rng.hpp"

namespace vprop {

/// Factorized Gaussian N(mu, diag(var)). var entries may be zero (a point
/// mass in that coordinate), which is how plug-in predictions are expressed.
struct DiagGaussian {
  Vec mu;
  Vec var;
};

/// Full-covariance Gaussian stored by its precision matrix.
struct FullGaussian {
  Vec mu;
  Mat prec;
};

using GaussianPosterior = std::variant<DiagGaussian, FullGaussian>;

const Vec& posterior_mean(const GaussianPosterior& post);

/// One draw from the posterior; deterministic=true returns the mean.
Vec sample_posterior(const GaussianPosterior& post, RngStream& rng,
                     bool deterministic = false);

/// Monte-Carlo predictive p(y=+1 | x) = (1/k) sum_j sigmoid(logit(theta_j, x))
/// over posterior samples, clamped to [1e-12, 1 - 1e-12].
double predictive_prob(const BinaryClassifier& model,
                       const GaussianPosterior& post, const Vec& x, int k,
                       RngStream& rng, bool deterministic = false);

double clamp_prob(double p);

}  // namespace vprop
