#include "vprop/vi_exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace vprop {

namespace {

std::string format_grad_norm(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace

ViExactNonConvergence::ViExactNonConvergence(MeanFieldState state,
                                             double grad_norm)
    : Error("vi_exact_baseline: no convergence within iteration cap "
            "(grad inf-norm " + format_grad_norm(grad_norm) + ")"),
      last_state(std::move(state)) {}

namespace {

struct Point {
  Vec mu;
  Vec log_sigma;
  double elbo = 0.0;
  Vec grad;  // stacked (d/dmu, d/dlog_sigma)
};

// elbo(mu, var) and its (d/dmu, d/dvar) gradients
struct MeanFieldElbo {
  std::function<double(const Vec&, const Vec&)> value;
  std::function<ElboGradients(const Vec&, const Vec&)> grads;
};

ViExactResult ascend(const MeanFieldElbo& elbo, int d, double lambda,
                     const ViExactOptions& opts) {
  auto evaluate = [&](const Vec& mu, const Vec& log_sigma) {
    Point p;
    p.mu = mu;
    p.log_sigma = log_sigma;
    const Vec var = (2.0 * log_sigma.array()).exp().matrix();
    p.elbo = elbo.value(mu, var);
    const ElboGradients g = elbo.grads(mu, var);
    p.grad.resize(2 * d);
    p.grad.head(d) = g.mu;
    // chain rule: d/d log sigma = d/d var * 2 var
    p.grad.tail(d) = (g.var.array() * 2.0 * var.array()).matrix();
    return p;
  };

  auto to_state = [&](const Point& p) {
    MeanFieldState state;
    state.lambda = lambda;
    state.mu = p.mu;
    const Vec var = (2.0 * p.log_sigma.array()).exp().matrix();
    state.s = (var.array().inverse() - lambda).matrix();
    return state;
  };

  // start at the prior
  Point cur = evaluate(Vec::Zero(d), Vec::Constant(d, -0.5 * std::log(lambda)));
  Vec prev_x, prev_grad;
  double step = 1.0 / (1.0 + cur.grad.norm());

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const double gnorm = cur.grad.lpNorm<Eigen::Infinity>();
    if (gnorm < opts.tol)
      return {to_state(cur), {cur.elbo, 0.0, 0}, iter};

    Vec x(2 * d);
    x.head(d) = cur.mu;
    x.tail(d) = cur.log_sigma;
    if (prev_x.size() > 0) {
      // Barzilai-Borwein initial step (ascent signs cancel)
      const Vec dx = x - prev_x;
      const Vec dg = cur.grad - prev_grad;
      const double dgg = dg.squaredNorm();
      if (dgg > 0.0) step = std::abs(dx.dot(dg)) / dgg;
      step = std::clamp(step, 1e-14, 1e10);
    }
    prev_x = x;
    prev_grad = cur.grad;

    // Armijo backtracking along the gradient. The floor term keeps progress
    // checks meaningful near the optimum, where true improvements drop below
    // the representable resolution of the objective.
    const double slope = cur.grad.squaredNorm();
    const double floor = 1e-11 * (1.0 + std::abs(cur.elbo));
    Point cand;
    for (int bt = 0; bt < 80; ++bt) {
      cand = evaluate(cur.mu + step * cur.grad.head(d),
                      cur.log_sigma + step * cur.grad.tail(d));
      if (cand.elbo >= cur.elbo + 1e-4 * step * slope - floor) break;
      step *= 0.5;
    }
    cur = std::move(cand);
  }

  throw ViExactNonConvergence(to_state(cur),
                              cur.grad.lpNorm<Eigen::Infinity>());
}

}  // namespace

ViExactResult vi_exact_baseline(const LogisticRegression& obj, double lambda,
                                const ViExactOptions& opts) {
  if (!(lambda > 0.0)) throw Error("vi_exact_baseline: lambda must be > 0");
  const QuadratureRule rule = QuadratureRule::gauss_hermite(opts.quad_order);
  MeanFieldElbo elbo;
  elbo.value = [&obj, lambda, &rule](const Vec& mu, const Vec& var) {
    return elbo_quadrature(obj, mu, var, lambda, rule).value;
  };
  elbo.grads = [&obj, lambda, &rule](const Vec& mu, const Vec& var) {
    return elbo_quadrature_grads(obj, mu, var, lambda, rule);
  };
  return ascend(elbo, obj.dim(), lambda, opts);
}

ViExactResult vi_exact_baseline(const QuadraticObjective& obj, double lambda,
                                const ViExactOptions& opts) {
  if (!(lambda > 0.0)) throw Error("vi_exact_baseline: lambda must be > 0");
  MeanFieldElbo elbo;
  elbo.value = [&obj, lambda](const Vec& mu, const Vec& var) {
    return elbo_exact_quadratic(obj, DiagGaussian{mu, var}, lambda).value;
  };
  elbo.grads = [&obj, lambda](const Vec& mu, const Vec& var) {
    // E[f] = 1/2 mu'H mu + c'mu + 1/2 diag(H).var
    ElboGradients g;
    g.mu = -(obj.hess() * mu + obj.lin()) - lambda * mu;
    g.var = (-0.5 * obj.hess().diagonal().array() - 0.5 * lambda +
             0.5 / var.array())
                .matrix();
    return g;
  };
  return ascend(elbo, obj.dim(), lambda, opts);
}

}  // namespace vprop
