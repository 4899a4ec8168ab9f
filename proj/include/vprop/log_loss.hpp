#pragma once

#include "vprop/dataset.hpp"
#include "vprop/predictive.hpp"

namespace vprop {

/// Average negative log predictive probability of the true labels,
///   -(1/N) sum_i log p_hat_i,
/// where each p_hat_i is a k-sample Monte-Carlo predictive (all points share
/// the same posterior draws) with probabilities clamped away from 0 and 1.
/// deterministic=true scores the plug-in predictor at the posterior mean.
double test_log_loss(const BinaryClassifier& model,
                     const GaussianPosterior& post, const Dataset& test, int k,
                     RngStream& rng, bool deterministic = false);

}  // namespace vprop
