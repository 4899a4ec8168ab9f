#include "vprop/steps.hpp"

#include <Eigen/LU>
#include <cmath>

namespace vprop {

RmsState rmsprop_step(const RmsState& state, const Objective& obj,
                      const StepConfig& cfg) {
  const Vec g = obj.grad(state.mu);
  RmsState next;
  next.s = (1.0 - cfg.beta) * state.s + cfg.beta * g.cwiseProduct(g);
  next.mu = state.mu -
            cfg.alpha * (g.array() / (next.s.array() + cfg.delta).sqrt()).matrix();
  return next;
}

MeanFieldState vprop_step(const MeanFieldState& state, const Objective& obj,
                          const StepConfig& cfg, RngStream& rng) {
  if (cfg.k_samples == 0) return vprop0_step(state, obj, cfg);

  const Vec prec = state.precision();
  Vec g_mean = Vec::Zero(state.mu.size());
  Vec h_mean = Vec::Zero(state.mu.size());
  for (int j = 0; j < cfg.k_samples; ++j) {
    const Vec theta =
        sample_gaussian_diag_precision(state.mu, prec, rng, cfg.deterministic);
    const Vec g = obj.grad(theta);
    g_mean += g;
    h_mean += g.cwiseProduct(g);
  }
  g_mean /= static_cast<double>(cfg.k_samples);
  h_mean /= static_cast<double>(cfg.k_samples);

  MeanFieldState next;
  next.lambda = state.lambda;
  next.s = (1.0 - cfg.beta) * state.s + cfg.beta * h_mean;
  next.mu = state.mu - cfg.alpha * ((g_mean + state.lambda * state.mu).array() /
                                    (next.s.array() + state.lambda))
                           .matrix();
  return next;
}

MeanFieldState vprop0_step(const MeanFieldState& state, const Objective& obj,
                           const StepConfig& cfg) {
  const Vec g = obj.grad(state.mu);
  MeanFieldState next;
  next.lambda = state.lambda;
  next.s = (1.0 - cfg.beta) * state.s + cfg.beta * g.cwiseProduct(g);
  next.mu = state.mu - cfg.alpha * ((g + state.lambda * state.mu).array() /
                                    (next.s.array() + state.lambda))
                           .matrix();
  return next;
}

MeanFieldState cvi_meanfield_step(const MeanFieldState& state,
                                  const Objective& obj, const StepConfig& cfg,
                                  RngStream& rng) {
  if (!obj.has_hessian_diag())
    throw CapabilityError("cvi_meanfield_step: objective lacks hessian_diag");

  const Vec prec = state.precision();
  const bool delta_mode = cfg.deterministic || cfg.k_samples == 0;
  const int k = delta_mode ? 1 : cfg.k_samples;

  Vec g_mean = Vec::Zero(state.mu.size());
  Vec h_mean = Vec::Zero(state.mu.size());
  for (int j = 0; j < k; ++j) {
    const Vec theta =
        sample_gaussian_diag_precision(state.mu, prec, rng, delta_mode);
    g_mean += obj.grad(theta);
    h_mean += obj.hessian_diag(theta);
  }
  g_mean /= static_cast<double>(k);
  h_mean /= static_cast<double>(k);

  MeanFieldState next;
  next.lambda = state.lambda;
  // precision first; the mean update below uses the new sigma'^2
  next.s = (1.0 - cfg.beta) * state.s + cfg.beta * h_mean;
  for (Eigen::Index i = 0; i < next.s.size(); ++i)
    if (!(next.s(i) + state.lambda > 0.0))
      throw NonPositivePrecisionError("cvi_meanfield_step",
                                      static_cast<int>(i));
  next.mu = state.mu - cfg.beta * ((g_mean + state.lambda * state.mu).array() /
                                   (next.s.array() + state.lambda))
                           .matrix();
  return next;
}

NaturalParams cvi_natural_step(const NaturalParams& state, const Vec& grad_mu,
                               const Vec& grad_var, double beta) {
  state.require_valid("cvi_natural_step");
  const Vec mu = state.mu();
  const Vec grad_m1 = grad_mu - 2.0 * grad_var.cwiseProduct(mu);
  const Vec& grad_m2 = grad_var;

  NaturalParams next;
  next.lam1 = state.lam1 + beta * grad_m1;
  next.lam2 = state.lam2 + beta * grad_m2;
  next.require_valid("cvi_natural_step");
  return next;
}

BbviState bbvi_step(const BbviState& state, const Objective& obj,
                    const StepConfig& cfg, RngStream& rng) {
  if (cfg.k_samples < 1) throw Error("bbvi_step: k_samples must be >= 1");

  Vec g_mu = Vec::Zero(state.mu.size());
  Vec g_sigma = Vec::Zero(state.mu.size());
  for (int j = 0; j < cfg.k_samples; ++j) {
    const Vec eps = sample_std_normal(rng, static_cast<int>(state.mu.size()));
    const Vec theta = state.mu + state.sigma.cwiseProduct(eps);
    const Vec g = obj.grad(theta);
    g_mu += g;
    g_sigma += g.cwiseProduct(eps);
  }
  g_mu /= static_cast<double>(cfg.k_samples);
  g_sigma /= static_cast<double>(cfg.k_samples);

  const Vec grad_mu_elbo = -g_mu - cfg.lambda * state.mu;
  const Vec grad_sigma_elbo =
      -g_sigma - cfg.lambda * state.sigma + state.sigma.cwiseInverse();

  BbviState next;
  next.mu = state.mu + cfg.rho * grad_mu_elbo;
  next.sigma =
      (state.sigma + cfg.rho * grad_sigma_elbo).cwiseMax(1e-8);
  return next;
}

FullCovState von_step(const FullCovState& state, const Objective& obj,
                      const StepConfig& cfg, RngStream& rng) {
  if (!obj.has_hessian_full())
    throw CapabilityError("von_step: objective lacks hessian_full");

  Vec theta;
  try {
    theta = sample_gaussian_full_precision(state.mu, state.precision(), rng,
                                           cfg.deterministic);
  } catch (const NotPdError& e) {
    throw NotPdError("von_step sampling from q_t", e.pivot());
  }

  FullCovState next;
  next.lambda = state.lambda;
  next.S = (1.0 - cfg.beta) * state.S + cfg.beta * obj.hessian_full(theta);

  Mat chol;
  try {
    chol = cholesky_factor(next.S + state.lambda *
                                        Mat::Identity(next.S.rows(), next.S.cols()));
  } catch (const NotPdError& e) {
    throw NotPdError("von_step mean update (S' + lambda I)", e.pivot());
  }
  next.mu = state.mu - cfg.beta * cholesky_solve(
                           chol, obj.grad(theta) + state.lambda * state.mu);
  return next;
}

FullCovState vong_step(const FullCovState& state, const Objective& obj,
                       const StepConfig& cfg, RngStream& rng) {
  const Vec theta = sample_gaussian_full_precision(state.mu, state.precision(),
                                                   rng, cfg.deterministic);
  const Vec g = obj.grad(theta);

  FullCovState next;
  next.lambda = state.lambda;
  next.S = (1.0 - cfg.beta) * state.S + cfg.beta * g * g.transpose();
  const Mat chol = cholesky_factor(
      next.S + state.lambda * Mat::Identity(next.S.rows(), next.S.cols()));
  next.mu =
      state.mu - cfg.beta * cholesky_solve(chol, g + state.lambda * state.mu);
  return next;
}

Vec newton_step(const Vec& theta, const Objective& obj, double rho) {
  const Mat hess = obj.hessian_full(theta);
  const Vec g = obj.grad(theta);
  Eigen::FullPivLU<Mat> lu(hess);
  if (!lu.isInvertible())
    throw SingularMatrixError("newton_step: Hessian is singular");
  return theta - rho * lu.solve(g);
}

}  // namespace vprop
