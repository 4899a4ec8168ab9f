#pragma once

#include "vprop/objective.hpp"
#include "vprop/rng.hpp"
#include "vprop/states.hpp"

namespace vprop {

// One-step transitions. Every step is a pure function of (state, objective,
// config, rng); replaying a seed replays the trajectory. The scale/precision
// update always runs first and the mean update uses the new scale.

/// RMSprop: s' = (1-beta) s + beta g.^2, mu' = mu - alpha g ./ sqrt(s'+delta).
RmsState rmsprop_step(const RmsState& state, const Objective& obj,
                      const StepConfig& cfg);

/// Vprop-K: average gradient and squared gradient over K draws from
/// N(mu, 1./(s+lambda)), then
///   s'  = (1-beta) s + beta mean(g.^2)
///   mu' = mu - alpha (mean(g) + lambda mu) ./ (s' + lambda).
/// K = 1 recovers Vprop-1; K = 0 falls through to vprop0_step bit-exactly.
MeanFieldState vprop_step(const MeanFieldState& state, const Objective& obj,
                          const StepConfig& cfg, RngStream& rng);

/// Vprop-0: the delta approximation, gradients taken at mu itself.
MeanFieldState vprop0_step(const MeanFieldState& state, const Objective& obj,
                           const StepConfig& cfg);

/// Mean-field CVI with exact diagonal Hessians:
///   sigma'^{-2} = (1-beta) sigma^{-2} + beta (mean(diag hess) + lambda)
///   mu'         = mu - beta (mean(g) + lambda mu) .* sigma'^2.
/// Stored as s' = (1-beta) s + beta mean(diag hess). Requires hessian_diag;
/// k_samples = 0 or deterministic evaluates at mu.
MeanFieldState cvi_meanfield_step(const MeanFieldState& state,
                                  const Objective& obj, const StepConfig& cfg,
                                  RngStream& rng);

/// The same CVI update written in natural-parameter form: lam' = lam + beta
/// grad_m, with gradients w.r.t. (mu, sigma^2) converted to mean-parameter
/// gradients by the chain rule grad_m1 = grad_mu - 2 grad_var .* mu,
/// grad_m2 = grad_var.
NaturalParams cvi_natural_step(const NaturalParams& state, const Vec& grad_mu,
                               const Vec& grad_var, double beta);

/// BBVI with reparameterization gradients and analytic prior/entropy terms:
///   mu'    = mu + rho (-mean(g) - lambda mu)
///   sigma' = sigma + rho (-mean(g .* eps) - lambda sigma + 1 ./ sigma),
/// sigma clamped to >= 1e-8. Requires k_samples >= 1.
BbviState bbvi_step(const BbviState& state, const Objective& obj,
                    const StepConfig& cfg, RngStream& rng);

/// Variational online Newton: S' = (1-beta) S + beta hess(theta_t),
/// mu' = mu - beta (S'+lambda I)^{-1} (g + lambda mu), theta_t drawn from
/// N(mu, (S+lambda I)^{-1}). The Hessian may be indefinite, so S'+lambda I
/// can lose positive definiteness; that raises NotPdError.
FullCovState von_step(const FullCovState& state, const Objective& obj,
                      const StepConfig& cfg, RngStream& rng);

/// Gauss-Newton variant of VON: S' = (1-beta) S + beta g g', which keeps S
/// positive semidefinite, so S'+lambda I stays PD for lambda > 0.
FullCovState vong_step(const FullCovState& state, const Objective& obj,
                       const StepConfig& cfg, RngStream& rng);

/// Damped Newton: theta' = theta - rho hess(theta)^{-1} g(theta).
Vec newton_step(const Vec& theta, const Objective& obj, double rho);

}  // namespace vprop
