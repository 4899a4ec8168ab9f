#include "vprop/elbo.hpp"

#include <cmath>

namespace vprop {

namespace {

// Per-datapoint logit moments under N(mu, diag(var)): mean x'mu and variance
// sum_d x_d^2 var_d. `fn(y, mean, var)` is accumulated with the view's scale.
template <class Fn>
void for_each_logit(const LogisticRegression& obj, const Vec& mu,
                    const Vec& var, Fn&& fn) {
  const Dataset& data = obj.data();
  auto run = [&](int i) {
    const double m = data.X.row(i).dot(mu);
    const double v = data.X.row(i).cwiseAbs2().dot(var);
    fn(i, data.y(i), m, v);
  };
  if (obj.row_subset().empty()) {
    for (int i = 0; i < data.n(); ++i) run(i);
  } else {
    for (int i : obj.row_subset()) run(i);
  }
}

void check_sizes(const LogisticRegression& obj, const Vec& mu, const Vec& var,
                 const char* what) {
  if (static_cast<int>(mu.size()) != obj.dim() || mu.size() != var.size())
    throw DimensionError(std::string(what) + ": state size mismatch");
}

}  // namespace

double kl_diag_to_prior(const Vec& mu, const Vec& var, double lambda) {
  if (mu.size() != var.size())
    throw DimensionError("kl_diag_to_prior: size mismatch");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (!(var(i) > 0.0))
      throw NonPositivePrecisionError("kl_diag_to_prior", static_cast<int>(i));
    acc += lambda * (mu(i) * mu(i) + var(i)) - 1.0 - std::log(lambda * var(i));
  }
  return 0.5 * acc;
}

double kl_full_to_prior(const Vec& mu, const Mat& prec, double lambda) {
  const Eigen::Index d = mu.size();
  const Mat chol = cholesky_factor(prec);
  // tr(prec^{-1}) = ||L^{-1}||_F^2 via forward solves on the identity
  double trace_cov = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    Vec e = Vec::Zero(d);
    e(j) = 1.0;
    // forward solve L y = e_j
    for (Eigen::Index i = 0; i < d; ++i) {
      double v = e(i);
      for (Eigen::Index k = 0; k < i; ++k) v -= chol(i, k) * e(k);
      e(i) = v / chol(i, i);
    }
    trace_cov += e.squaredNorm();
  }
  return 0.5 * (lambda * trace_cov + lambda * mu.squaredNorm() -
                static_cast<double>(d) - d * std::log(lambda) +
                cholesky_log_det(chol));
}

ElboEstimate elbo_mc(const Objective& obj, const GaussianPosterior& post,
                     double lambda, int k, RngStream& rng) {
  if (k < 1) throw Error("elbo_mc: k must be >= 1");
  double sum = 0.0, sum_sq = 0.0;
  for (int j = 0; j < k; ++j) {
    const double f = obj.value(sample_posterior(post, rng));
    sum += f;
    sum_sq += f * f;
  }
  const double mean = sum / k;
  double se = 0.0;
  if (k > 1) {
    const double var = (sum_sq - k * mean * mean) / (k - 1);
    se = std::sqrt(std::max(var, 0.0) / k);
  }
  const double kl =
      std::holds_alternative<DiagGaussian>(post)
          ? kl_diag_to_prior(std::get<DiagGaussian>(post).mu,
                             std::get<DiagGaussian>(post).var, lambda)
          : kl_full_to_prior(std::get<FullGaussian>(post).mu,
                             std::get<FullGaussian>(post).prec, lambda);
  return {-mean - kl, se, k};
}

ElboEstimate elbo_quadrature(const LogisticRegression& obj, const Vec& mu,
                             const Vec& var, double lambda,
                             const QuadratureRule& rule) {
  check_sizes(obj, mu, var, "elbo_quadrature");
  double lik = 0.0;
  for_each_logit(obj, mu, var, [&](int, double y, double m, double v) {
    lik += rule.expect(m, v, [&](double a) { return -softplus(-y * a); });
  });
  return {obj.scale() * lik - kl_diag_to_prior(mu, var, lambda), 0.0, 0};
}

ElboEstimate elbo_quadrature(const Objective& obj, const Vec& mu,
                             const Vec& var, double lambda,
                             const QuadratureRule& rule) {
  const auto* logreg = dynamic_cast<const LogisticRegression*>(&obj);
  if (logreg == nullptr)
    throw CapabilityError(
        "elbo_quadrature: only logistic-regression objectives are supported");
  return elbo_quadrature(*logreg, mu, var, lambda, rule);
}

ElboEstimate elbo_exact_quadratic(const QuadraticObjective& obj,
                                  const GaussianPosterior& post,
                                  double lambda) {
  // E[f] = 1/2 (mu'H mu + tr(H Sigma)) + c'mu
  const Vec& mu = posterior_mean(post);
  double expected_f = 0.5 * mu.dot(obj.hess() * mu) + obj.lin().dot(mu);
  double kl = 0.0;
  if (const auto* diag = std::get_if<DiagGaussian>(&post)) {
    expected_f += 0.5 * obj.hess().diagonal().dot(diag->var);
    kl = kl_diag_to_prior(diag->mu, diag->var, lambda);
  } else {
    const auto& full = std::get<FullGaussian>(post);
    const Mat chol = cholesky_factor(full.prec);
    double trace = 0.0;
    for (Eigen::Index j = 0; j < full.prec.cols(); ++j) {
      Vec e = Vec::Zero(full.prec.rows());
      e(j) = 1.0;
      trace += obj.hess().row(j).dot(cholesky_solve(chol, e));
    }
    expected_f += 0.5 * trace;
    kl = kl_full_to_prior(full.mu, full.prec, lambda);
  }
  return {-expected_f - kl, 0.0, 0};
}

double expected_nll_quadrature(const LogisticRegression& obj, const Vec& mu,
                               const Vec& var, const QuadratureRule& rule) {
  check_sizes(obj, mu, var, "expected_nll_quadrature");
  double acc = 0.0;
  for_each_logit(obj, mu, var, [&](int, double y, double m, double v) {
    acc += rule.expect(m, v, [&](double a) { return softplus(-y * a); });
  });
  return obj.scale() * acc;
}

Vec expected_grad_quadrature(const LogisticRegression& obj, const Vec& mu,
                             const Vec& var, const QuadratureRule& rule) {
  check_sizes(obj, mu, var, "expected_grad_quadrature");
  Vec g = Vec::Zero(mu.size());
  for_each_logit(obj, mu, var, [&](int i, double y, double m, double v) {
    const double slope =
        rule.expect(m, v, [&](double a) { return sigmoid(-y * a); });
    g -= y * slope * obj.data().X.row(i).transpose();
  });
  return obj.scale() * g;
}

Vec expected_hessian_diag_quadrature(const LogisticRegression& obj,
                                     const Vec& mu, const Vec& var,
                                     const QuadratureRule& rule) {
  check_sizes(obj, mu, var, "expected_hessian_diag_quadrature");
  Vec h = Vec::Zero(mu.size());
  for_each_logit(obj, mu, var, [&](int i, double /*y*/, double m, double v) {
    const double curv = rule.expect(
        m, v, [&](double a) { return sigmoid(a) * sigmoid(-a); });
    h += curv * obj.data().X.row(i).cwiseAbs2().transpose();
  });
  return obj.scale() * h;
}

ElboGradients elbo_quadrature_grads(const LogisticRegression& obj,
                                    const Vec& mu, const Vec& var,
                                    double lambda, const QuadratureRule& rule) {
  // Bonnet/Price route: d/dmu = -E[grad f] - lambda mu,
  // d/dvar = -1/2 E[diag hess f] - lambda/2 + 1/(2 var)
  ElboGradients out;
  out.mu = -expected_grad_quadrature(obj, mu, var, rule) - lambda * mu;
  out.var = -0.5 * expected_hessian_diag_quadrature(obj, mu, var, rule) -
            Vec::Constant(mu.size(), 0.5 * lambda) +
            (0.5 / var.array()).matrix();
  return out;
}

}  // namespace vprop
