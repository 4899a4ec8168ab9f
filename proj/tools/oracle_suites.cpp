#include "oracle_suites.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numbers>

#include "vprop/elbo.hpp"
#include "vprop/finite_diff.hpp"
#include "vprop/steps.hpp"
#include "vprop/synthetic.hpp"
#include "vprop/vi_exact.hpp"

namespace vprop {

namespace {

void normal_moments() {
  RngStream rng(123);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.next_normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  std::printf("draws = %d\n", n);
  std::printf("sample_mean = %.6f (bound 0.02)\n", mean);
  std::printf("sample_variance = %.6f (bound 1 +/- 0.03)\n",
              sum_sq / n - mean * mean);
}

void gaussian_covariance() {
  Mat prec(2, 2);
  prec << 2, 1, 1, 2;
  RngStream rng(101);
  const int n = 100000;
  Vec sum = Vec::Zero(2);
  Mat outer = Mat::Zero(2, 2);
  for (int i = 0; i < n; ++i) {
    const Vec s = sample_gaussian_full_precision(Vec::Zero(2), prec, rng);
    sum += s;
    outer += s * s.transpose();
  }
  const Vec mean = sum / n;
  const Mat cov = outer / n - mean * mean.transpose();
  std::printf("analytic_inverse = [[%.6f, %.6f], [%.6f, %.6f]]\n", 2.0 / 3,
              -1.0 / 3, -1.0 / 3, 2.0 / 3);
  std::printf("empirical_cov    = [[%.6f, %.6f], [%.6f, %.6f]]\n", cov(0, 0),
              cov(0, 1), cov(1, 0), cov(1, 1));
}

void cholesky_hand() {
  Mat a(2, 2);
  a << 4, 2, 2, 3;
  const Mat lower = cholesky_factor(a);
  std::printf("L = [[%.12f, %.12f], [%.12f, %.12f]]\n", lower(0, 0),
              lower(0, 1), lower(1, 0), lower(1, 1));
  std::printf("hand expansion: [[2, 0], [1, sqrt(2) = %.12f]]\n",
              std::sqrt(2.0));
}

void logreg_hand() {
  Dataset point;
  point.X = Mat::Constant(1, 1, 1.0);
  point.y = Vec::Constant(1, 1.0);
  LogisticRegression lr(std::make_shared<const Dataset>(point));
  std::printf("value(theta=2)  = %.9f  (log(1+e^-2) = %.9f)\n",
              lr.value(Vec::Constant(1, 2.0)), std::log1p(std::exp(-2.0)));
  std::printf("grad(theta=0)   = %.9f  (expected -0.5)\n",
              lr.grad(Vec::Zero(1))(0));
  std::printf("hess_diag(0)    = %.9f  (quarter rule: 0.25)\n",
              lr.hessian_diag(Vec::Zero(1))(0));
}

void steps_hand() {
  {
    QuadraticObjective lin(Mat::Zero(1, 1), Vec::Constant(1, 2.0));
    StepConfig cfg;
    cfg.alpha = 0.1;
    cfg.beta = 1.0;
    cfg.delta = 0.0;
    const RmsState next = rmsprop_step({Vec::Zero(1), Vec::Zero(1)}, lin, cfg);
    std::printf("rmsprop: s' = %.12f (hand 4), mu' = %.12f (hand -0.1)\n",
                next.s(0), next.mu(0));
  }
  {
    QuadraticObjective quad(Mat::Constant(1, 1, 1.0), Vec::Zero(1));
    StepConfig cfg;
    cfg.alpha = cfg.beta = 0.5;
    cfg.k_samples = 1;
    cfg.deterministic = true;
    RngStream rng(1);
    const MeanFieldState next =
        vprop_step({Vec::Ones(1), Vec::Constant(1, 3.0), 1.0}, quad, cfg, rng);
    std::printf("vprop:   s' = %.12f (hand 2), mu' = %.12f (hand 2/3)\n",
                next.s(0), next.mu(0));
  }
  {
    QuadraticObjective quad(Mat::Constant(1, 1, 2.0), Vec::Zero(1));
    StepConfig cfg;
    cfg.beta = 0.5;
    cfg.deterministic = true;
    RngStream rng(1);
    const MeanFieldState next =
        cvi_meanfield_step({Vec::Ones(1), Vec::Zero(1), 1.0}, quad, cfg, rng);
    std::printf("cvi:     prec' = %.12f (hand 2), mu' = %.12f (hand 0.25)\n",
                next.s(0) + 1.0, next.mu(0));
  }
  {
    Vec c(2);
    c << 1.0, 2.0;
    QuadraticObjective lin(Mat::Zero(2, 2), c);
    StepConfig cfg;
    cfg.beta = 1.0;
    cfg.deterministic = true;
    RngStream rng(1);
    const FullCovState next =
        vong_step(FullCovState::init(2, 1.0), lin, cfg, rng);
    std::printf("vong:    S' = [[%.1f, %.1f], [%.1f, %.1f]] (hand [[1,2],[2,4]])\n",
                next.S(0, 0), next.S(0, 1), next.S(1, 0), next.S(1, 1));
  }
}

void conjugate_posterior() {
  ConjugateQuadratic hand{std::make_shared<QuadraticObjective>(
      Mat::Constant(1, 1, 2.0), Vec::Zero(1))};
  std::printf("1-D hand case: mean = %.9f (0), precision = %.9f (3)\n",
              hand.posterior_mean(1.0)(0), hand.posterior_precision(1.0)(0, 0));

  const ConjugateQuadratic problem = gen_conjugate_quadratic(3, 42);
  const double lambda = 1.0;
  const Vec mean = problem.posterior_mean(lambda);
  std::printf("d=3 seed=42: posterior mean = (%.9f, %.9f, %.9f)\n", mean(0),
              mean(1), mean(2));
  std::printf("log evidence = %.9f\n", problem.log_evidence(lambda));

  FullCovState state = FullCovState::init(3, lambda);
  StepConfig cfg;
  cfg.beta = 0.5;
  cfg.deterministic = true;
  RngStream rng(1);
  for (int t = 0; t < 300; ++t) state = von_step(state, *problem.objective, cfg, rng);
  std::printf("VON fixed point error: mean %.3e, precision %.3e\n",
              (state.mu - mean).norm(),
              (state.precision() - problem.posterior_precision(lambda)).norm());
}

void grid_map() {
  Dataset data;
  data.X.resize(4, 2);
  data.X << 1.0, 0.2, 1.0, -0.1, -0.5, 1.0, -0.4, 0.9;
  data.y.resize(4);
  data.y << 1.0, -1.0, 1.0, -1.0;
  LogisticRegression lr(std::make_shared<const Dataset>(data));

  Vec center = Vec::Zero(2);
  double width = 5.0;
  Vec best = center;
  for (int level = 0; level < 6; ++level) {
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = -40; i <= 40; ++i)
      for (int j = -40; j <= 40; ++j) {
        Vec cand(2);
        cand << center(0) + width * i / 40.0, center(1) + width * j / 40.0;
        const double v = lr.value(cand);
        if (v < best_val) {
          best_val = v;
          best = cand;
        }
      }
    center = best;
    width /= 20.0;
  }
  std::printf("grid-search minimizer = (%.6f, %.6f)\n", best(0), best(1));

  Vec theta = Vec::Zero(2);
  for (int t = 0; t < 60; ++t) theta = newton_step(theta, lr, 1.0);
  std::printf("newton iterate        = (%.6f, %.6f)\n", theta(0), theta(1));
}

void quadrature_convergence() {
  const QuadratureRule q40 = QuadratureRule::gauss_hermite(40);
  const QuadratureRule q80 = QuadratureRule::gauss_hermite(80);
  std::printf("sum(w) - sqrt(pi): Q40 %.3e, Q80 %.3e\n",
              q40.weights().sum() - std::sqrt(std::numbers::pi),
              q80.weights().sum() - std::sqrt(std::numbers::pi));

  auto data = std::make_shared<Dataset>(gen_logreg_synthetic(25, 3, 11));
  LogisticRegression lr(data);
  const Vec mu = Vec::Constant(3, 0.6);
  const Vec var = Vec::Constant(3, 0.1);
  const double a = elbo_quadrature(lr, mu, var, 0.5, q40).value;
  const double b = elbo_quadrature(lr, mu, var, 0.5, q80).value;
  std::printf("elbo Q40 = %.15f\nelbo Q80 = %.15f\n|diff| = %.3e\n", a, b,
              std::abs(a - b));
}

void geometric_scale() {
  const double h = 2.0, mu0 = 1.0, s0 = 5.0, beta = 0.3;
  QuadraticObjective quad(Mat::Constant(1, 1, h), Vec::Zero(1));
  StepConfig cfg;
  cfg.alpha = cfg.beta = beta;
  MeanFieldState state{Vec::Constant(1, mu0), Vec::Constant(1, s0), 1.0};
  const double g_sq = (h * mu0) * (h * mu0);
  for (int t = 1; t <= 5; ++t) {
    state = vprop0_step(state, quad, cfg);
    state.mu(0) = mu0;  // frozen mean
    const double closed = g_sq + std::pow(1.0 - beta, t) * (s0 - g_sq);
    std::printf("t=%d  iterated s = %.12f, closed form = %.12f\n", t,
                state.s(0), closed);
  }
}

void bonnet_price() {
  auto data = std::make_shared<Dataset>(gen_logreg_synthetic(15, 2, 3));
  LogisticRegression lr(data);
  const Vec mu = Vec::Constant(2, 0.3);
  const Vec var = Vec::Constant(2, 0.08);
  const QuadratureRule rule = QuadratureRule::gauss_hermite(40);

  const int k = 100000;
  RngStream rng(5);
  Vec g_sum = Vec::Zero(2), g_sq = Vec::Zero(2);
  Vec h_sum = Vec::Zero(2), h_sq = Vec::Zero(2);
  for (int j = 0; j < k; ++j) {
    const Vec theta =
        mu + (sample_std_normal(rng, 2).array() * var.array().sqrt()).matrix();
    const Vec g = lr.grad(theta);
    const Vec h = lr.hessian_diag(theta);
    g_sum += g;
    g_sq += g.cwiseProduct(g);
    h_sum += h;
    h_sq += h.cwiseProduct(h);
  }
  const Vec g_mean = g_sum / k;
  const Vec h_mean = 0.5 * h_sum / k;

  const Vec fd_mu = fd_grad(
      [&](const Vec& m) { return expected_nll_quadrature(lr, m, var, rule); },
      mu, 1e-5);
  const Vec fd_var = fd_grad(
      [&](const Vec& v) { return expected_nll_quadrature(lr, mu, v, rule); },
      var, 1e-6);
  std::printf("MC E[grad f]          = (%.6f, %.6f)\n", g_mean(0), g_mean(1));
  std::printf("fd of E_q[f] wrt mu   = (%.6f, %.6f)\n", fd_mu(0), fd_mu(1));
  std::printf("MC 0.5 E[diag hess]   = (%.6f, %.6f)\n", h_mean(0), h_mean(1));
  std::printf("fd of E_q[f] wrt var  = (%.6f, %.6f)\n", fd_var(0), fd_var(1));
}

const std::map<std::string, std::function<void()>>& suites() {
  static const std::map<std::string, std::function<void()>> registry = {
      {"normal-moments", normal_moments},
      {"gaussian-covariance", gaussian_covariance},
      {"cholesky-hand", cholesky_hand},
      {"logreg-hand", logreg_hand},
      {"steps-hand", steps_hand},
      {"conjugate-posterior", conjugate_posterior},
      {"grid-map", grid_map},
      {"quadrature-convergence", quadrature_convergence},
      {"geometric-scale", geometric_scale},
      {"bonnet-price", bonnet_price},
  };
  return registry;
}

}  // namespace

std::vector<std::string> oracle_suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suites()) names.push_back(name);
  return names;
}

void run_oracle_suite(const std::string& name) {
  if (name == "all") {
    for (const auto& [suite_name, fn] : suites()) {
      std::printf("== %s ==\n", suite_name.c_str());
      fn();
      std::printf("\n");
    }
    return;
  }
  const auto it = suites().find(name);
  if (it == suites().end()) {
    std::string known;
    for (const auto& n : oracle_suite_names()) known += " " + n;
    throw Error("unknown oracle suite '" + name + "'; available:" + known);
  }
  it->second();
}

}  // namespace vprop
