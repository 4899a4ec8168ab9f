#pragma once

#include <cstddef>

#include "vprop/predictive.hpp"

namespace vprop {

/// Step sizes and sampling knobs shared by all one-step updates.
struct StepConfig {
  double alpha = 0.1;   // mean step size
  double beta = 0.1;    // scale / precision step size
  double rho = 0.01;    // BBVI step size
  double delta = 1e-8;  // RMSprop damping
  int k_samples = 1;    // MC sample count; 0 selects the delta approximation
  double lambda = 1.0;  // prior precision
  bool deterministic = false;  // force theta = mu wherever a step samples
  /// Optional 1/t schedule, off by default. The harness scales alpha, beta
  /// and rho by 1 / (1 + decay * pass) before each pass.
  double decay = 0.0;

  /// The config with the schedule applied at data pass t.
  StepConfig at_pass(int pass) const;

  void validate() const;
};

/// RMSprop point estimate: parameter vector and scaling vector.
struct RmsState {
  Vec mu;
  Vec s;  // elementwise >= 0

  static RmsState init(int d);
  std::size_t real_count() const;
};

/// Mean-field Gaussian posterior stored as (mu, s) with precision s + lambda,
/// i.e. variance 1 ./ (s + lambda). Exactly 2D+1 stored reals.
struct MeanFieldState {
  Vec mu;
  Vec s;  // elementwise >= 0 for the Gauss-Newton updates
  double lambda = 1.0;

  Vec precision() const;  // s + lambda
  Vec variance() const;   // 1 ./ (s + lambda)
  DiagGaussian posterior() const;

  static MeanFieldState init(int d, double lambda);
  std::size_t real_count() const;
};

/// BBVI parameterization: mean and standard deviation, updated directly.
struct BbviState {
  Vec mu;
  Vec sigma;  // elementwise > 0

  DiagGaussian posterior() const;

  /// sigma starts at the prior standard deviation 1/sqrt(lambda).
  static BbviState init(int d, double lambda);
  std::size_t real_count() const;
};

/// Full-covariance state: posterior precision is S + lambda I.
struct FullCovState {
  Vec mu;
  Mat S;
  double lambda = 1.0;

  Mat precision() const;
  FullGaussian posterior() const;

  static FullCovState init(int d, double lambda);
  std::size_t real_count() const;
};

/// Gaussian natural parameters lam1 = mu ./ sigma^2, lam2 = -1/(2 sigma^2),
/// with the dual mean-parameter views m1 = mu, m2 = sigma^2 + mu^2.
struct NaturalParams {
  Vec lam1;
  Vec lam2;  // elementwise < 0

  static NaturalParams from_moments(const Vec& mu, const Vec& var);
  Vec mu() const;
  Vec variance() const;
  Vec m1() const { return mu(); }
  Vec m2() const;

  void require_valid(const char* where) const;
};

/// Storage a BBVI run would need if RMSprop-style step-size adaptation kept a
/// scaling vector for each of mu and sigma: four length-D vectors.
constexpr std::size_t bbvi_adaptive_real_count(std::size_t d) { return 4 * d; }

}  // namespace vprop
