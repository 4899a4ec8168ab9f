#pragma once

#include "vprop/elbo.hpp"
#include "vprop/states.hpp"

namespace vprop {

struct ViExactOptions {
  double tol = 1e-8;        // infinity norm of the (mu, log sigma) gradient
  int max_iterations = 100000;
  int quad_order = 40;
};

struct ViExactResult {
  MeanFieldState state;
  ElboEstimate elbo;
  int iterations = 0;
};

/// vi_exact_baseline exceeded its iteration cap; carries the last state so
/// callers can inspect how far it got.
class ViExactNonConvergence : public Error {
public:
  ViExactNonConvergence(MeanFieldState state, double grad_norm);
  MeanFieldState last_state;
};

/// Deterministic ground-truth optimum of the quadrature ELBO over
/// (mu, log sigma): gradient ascent with Barzilai-Borwein step initialization
/// and Armijo backtracking, run until the gradient infinity norm drops below
/// tol. Returns the optimal state and its ELBO.
ViExactResult vi_exact_baseline(const LogisticRegression& obj, double lambda,
                                const ViExactOptions& opts = {});

/// Same optimizer over the closed-form mean-field ELBO of a quadratic
/// objective; the conjugate fixture's cross-oracle.
ViExactResult vi_exact_baseline(const QuadraticObjective& obj, double lambda,
                                const ViExactOptions& opts = {});

}  // namespace vprop
