#include "vprop/predictive.hpp"

#include <algorithm>
#include <cmath>

#include "vprop/logreg.hpp"

namespace vprop {

const Vec& posterior_mean(const GaussianPosterior& post) {
  return std::visit([](const auto& p) -> const Vec& { return p.mu; }, post);
}

Vec sample_posterior(const GaussianPosterior& post, RngStream& rng,
                     bool deterministic) {
  if (const auto* diag = std::get_if<DiagGaussian>(&post)) {
    if (deterministic) return diag->mu;
    Vec eps = sample_std_normal(rng, static_cast<int>(diag->mu.size()));
    return diag->mu + (eps.array() * diag->var.array().sqrt()).matrix();
  }
  const auto& full = std::get<FullGaussian>(post);
  return sample_gaussian_full_precision(full.mu, full.prec, rng, deterministic);
}

double clamp_prob(double p) { return std::clamp(p, 1e-12, 1.0 - 1e-12); }

double predictive_prob(const BinaryClassifier& model,
                       const GaussianPosterior& post, const Vec& x, int k,
                       RngStream& rng, bool deterministic) {
  if (k < 1) throw Error("predictive_prob: k must be >= 1");
  if (deterministic)
    return clamp_prob(sigmoid(model.logit(posterior_mean(post), x)));
  double acc = 0.0;
  for (int j = 0; j < k; ++j) {
    const Vec theta = sample_posterior(post, rng);
    acc += sigmoid(model.logit(theta, x));
  }
  return clamp_prob(acc / static_cast<double>(k));
}

}  // namespace vprop
