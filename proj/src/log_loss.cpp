#include "vprop/log_loss.hpp"

#include <cmath>
#include <vector>

#include "vprop/logreg.hpp"

namespace vprop {

double test_log_loss(const BinaryClassifier& model,
                     const GaussianPosterior& post, const Dataset& test, int k,
                     RngStream& rng, bool deterministic) {
  if (test.n() < 1) throw Error("test_log_loss: empty test set");
  if (k < 1) throw Error("test_log_loss: k must be >= 1");

  std::vector<Vec> thetas;
  if (deterministic) {
    thetas.push_back(posterior_mean(post));
  } else {
    thetas.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) thetas.push_back(sample_posterior(post, rng));
  }

  Vec p = Vec::Zero(test.n());
  for (const Vec& theta : thetas) {
    const Vec logits = model.batch_logits(theta, test.X);
    for (int i = 0; i < test.n(); ++i)
      p(i) += sigmoid(test.y(i) * logits(i));
  }
  p /= static_cast<double>(thetas.size());
  double loss = 0.0;
  for (int i = 0; i < test.n(); ++i) loss -= std::log(clamp_prob(p(i)));
  return loss / test.n();
}

}  // namespace vprop
