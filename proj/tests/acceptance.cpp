// Acceptance suite: every shipped guarantee has one criterion here, checked
// at its stated tolerance and runtime budget. Run `acceptance all` or
// `acceptance <n>`; each criterion prints a single PASS/FAIL line.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>

#include "vprop/elbo.hpp"
#include "vprop/experiment.hpp"
#include "vprop/finite_diff.hpp"
#include "vprop/libsvm.hpp"
#include "vprop/split.hpp"
#include "vprop/steps.hpp"
#include "vprop/trace_csv.hpp"
#include "vprop/vi_exact.hpp"

#ifndef VPROP_SOURCE_DIR
#define VPROP_SOURCE_DIR "."
#endif

using namespace vprop;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

bool report(int n, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", n,
              what.c_str(), detail.c_str());
  std::fflush(stdout);
  return pass;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------- criterion 1

bool criterion_1() {
  Timer timer;
  const double tol = 1e-6;
  const int max_steps = 10000;

  // mean-field CVI on a diagonal conjugate problem
  const ConjugateQuadratic diag = gen_conjugate_quadratic_diag(5, 101);
  const double lam1 = 0.7;
  const Vec mu_star_d = diag.posterior_mean(lam1);
  const Vec prec_star_d = diag.posterior_precision(lam1).diagonal();
  StepConfig cvi_cfg;
  cvi_cfg.beta = 0.5;
  cvi_cfg.deterministic = true;
  cvi_cfg.lambda = lam1;
  MeanFieldState mf = MeanFieldState::init(5, lam1);
  RngStream rng1(1);
  int cvi_steps = max_steps;
  for (int t = 0; t < max_steps; ++t) {
    mf = cvi_meanfield_step(mf, *diag.objective, cvi_cfg, rng1);
    if ((mf.mu - mu_star_d).lpNorm<Eigen::Infinity>() < tol &&
        (mf.precision() - prec_star_d).lpNorm<Eigen::Infinity>() < tol) {
      cvi_steps = t + 1;
      break;
    }
  }
  const double cvi_mu_err = (mf.mu - mu_star_d).lpNorm<Eigen::Infinity>();
  const double cvi_prec_err =
      (mf.precision() - prec_star_d).lpNorm<Eigen::Infinity>();

  // full-covariance VON on a dense conjugate problem
  const ConjugateQuadratic full = gen_conjugate_quadratic(4, 102);
  const double lam2 = 0.9;
  const Vec mu_star_f = full.posterior_mean(lam2);
  const Mat prec_star_f = full.posterior_precision(lam2);
  StepConfig von_cfg;
  von_cfg.beta = 0.5;
  von_cfg.deterministic = true;
  von_cfg.lambda = lam2;
  FullCovState fc = FullCovState::init(4, lam2);
  RngStream rng2(2);
  int von_steps = max_steps;
  for (int t = 0; t < max_steps; ++t) {
    fc = von_step(fc, *full.objective, von_cfg, rng2);
    if ((fc.mu - mu_star_f).lpNorm<Eigen::Infinity>() < tol &&
        (fc.precision() - prec_star_f).cwiseAbs().maxCoeff() < tol) {
      von_steps = t + 1;
      break;
    }
  }
  const double von_mu_err = (fc.mu - mu_star_f).lpNorm<Eigen::Infinity>();
  const double von_prec_err = (fc.precision() - prec_star_f).cwiseAbs().maxCoeff();

  const double secs = timer.seconds();
  const bool pass = cvi_mu_err < tol && cvi_prec_err < tol &&
                    von_mu_err < tol && von_prec_err < tol &&
                    cvi_steps < max_steps && von_steps < max_steps &&
                    secs < 5.0;
  return report(1, pass, "conjugate-Gaussian exactness of CVI and VON",
                fmt("cvi %d steps err %.1e/%.1e, von %d steps err %.1e/%.1e, "
                    "%.2fs < 5s",
                    cvi_steps, cvi_mu_err, cvi_prec_err, von_steps, von_mu_err,
                    von_prec_err, secs));
}

// ---------------------------------------------------------------- criterion 2

bool criterion_2() {
  Timer timer;
  RngStream rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_u64() % 8);
    const Vec mu = sample_std_normal(rng, d);
    const Vec var = (sample_std_normal(rng, d).array().abs() + 0.1).matrix();
    const Vec grad_mu = sample_std_normal(rng, d);
    const double beta = 0.05 + 0.9 * rng.next_unit();
    // keep the updated lam2 negative
    const Vec grad_var = (0.2 / beta) *
                         (sample_std_normal(rng, d).array().tanh() *
                          var.array().inverse())
                             .matrix();

    const NaturalParams next = cvi_natural_step(
        NaturalParams::from_moments(mu, var), grad_mu, grad_var, beta);

    // closed-form update in moment coordinates
    const Vec new_var =
        (var.array().inverse() - 2.0 * beta * grad_var.array()).inverse().matrix();
    const Vec new_mu = mu + beta * new_var.cwiseProduct(grad_mu);

    const Vec got_var = next.variance();
    const Vec got_mu = next.mu();
    for (int i = 0; i < d; ++i) {
      worst = std::max(worst, std::abs(got_var(i) - new_var(i)) /
                                  std::max(1.0, std::abs(new_var(i))));
      worst = std::max(worst, std::abs(got_mu(i) - new_mu(i)) /
                                  std::max(1.0, std::abs(new_mu(i))));
    }
  }
  const double secs = timer.seconds();
  const bool pass = worst < 1e-12 && secs < 1.0;
  return report(2, pass, "natural-parameter and moment-form CVI agree",
                fmt("1000 triples, worst elementwise error %.2e < 1e-12, "
                    "%.2fs < 1s",
                    worst, secs));
}

// ---------------------------------------------------------------- criterion 3

bool criterion_3() {
  auto data = std::make_shared<const Dataset>(gen_logreg_synthetic(15, 2, 3));
  LogisticRegression lr(data);
  const QuadratureRule rule = QuadratureRule::gauss_hermite(40);
  const int k = 100000;

  RngStream rng(5);
  int checked = 0, within = 0;
  double worst_sigma = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Vec mu = 0.5 * sample_std_normal(rng, 2);
    const Vec var =
        (0.02 + 0.28 * sample_std_normal(rng, 2).array().abs().min(1.0))
            .matrix();
    const Vec sigma = var.cwiseSqrt();

    Vec g_sum = Vec::Zero(2), g_sq = Vec::Zero(2);
    Vec h_sum = Vec::Zero(2), h_sq = Vec::Zero(2);
    for (int j = 0; j < k; ++j) {
      const Vec theta =
          mu + sigma.cwiseProduct(sample_std_normal(rng, 2));
      const Vec g = lr.grad(theta);
      const Vec h = lr.hessian_diag(theta);
      g_sum += g;
      g_sq += g.cwiseProduct(g);
      h_sum += h;
      h_sq += h.cwiseProduct(h);
    }
    const Vec g_mean = g_sum / k;
    const Vec h_half_mean = 0.5 * h_sum / k;
    Vec g_se(2), h_se(2);
    for (int i = 0; i < 2; ++i) {
      g_se(i) = std::sqrt(
          std::max(0.0, (g_sq(i) / k - g_mean(i) * g_mean(i)) / k));
      const double h_mean = h_sum(i) / k;
      h_se(i) = 0.5 * std::sqrt(
          std::max(0.0, (h_sq(i) / k - h_mean * h_mean) / k));
    }

    // likelihood term of the ELBO is -E_q[f]
    const Vec fd_mu = fd_grad(
        [&](const Vec& m) { return -expected_nll_quadrature(lr, m, var, rule); },
        mu, 1e-5);
    const Vec fd_var = fd_grad(
        [&](const Vec& v) { return -expected_nll_quadrature(lr, mu, v, rule); },
        var, 1e-6);

    for (int i = 0; i < 2; ++i) {
      ++checked;
      const double dev_mu = std::abs(fd_mu(i) - (-g_mean(i)));
      if (dev_mu <= 3.0 * g_se(i) + 1e-9) ++within;
      worst_sigma = std::max(worst_sigma, dev_mu / (g_se(i) + 1e-12));

      ++checked;
      const double dev_var = std::abs(fd_var(i) - (-h_half_mean(i)));
      if (dev_var <= 3.0 * h_se(i) + 1e-9) ++within;
      worst_sigma = std::max(worst_sigma, dev_var / (h_se(i) + 1e-12));
    }
  }
  const bool pass = within == checked;
  return report(3, pass, "Bonnet/Price identities against the quadrature bound",
                fmt("20 states, %d/%d moments within 3 SE at k=1e5 "
                    "(worst %.2f SE)",
                    within, checked, worst_sigma));
}

// ---------------------------------------------------------------- criterion 4

bool criterion_4() {
  RngStream rng(11);
  bool collapse_exact = true;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_u64() % 6);
    auto data = std::make_shared<const Dataset>(
        gen_logreg_synthetic(12, d, 400 + trial));
    LogisticRegression lr(data);
    MeanFieldState state{sample_std_normal(rng, d),
                         sample_std_normal(rng, d).cwiseAbs(),
                         0.1 + rng.next_unit()};
    StepConfig cfg;
    cfg.alpha = 0.05 + 0.9 * rng.next_unit();
    cfg.beta = 0.05 + 0.9 * rng.next_unit();
    cfg.k_samples = 0;
    RngStream step_rng(1000 + trial);
    const MeanFieldState a = vprop_step(state, lr, cfg, step_rng);
    const MeanFieldState b = vprop0_step(state, lr, cfg);
    for (int i = 0; i < d; ++i)
      if (a.mu(i) != b.mu(i) || a.s(i) != b.s(i)) collapse_exact = false;
  }

  double worst_vong = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    auto data = std::make_shared<const Dataset>(
        gen_logreg_synthetic(10, 1, 500 + trial));
    LogisticRegression lr(data);
    const double lambda = 0.2 + rng.next_unit();
    const double mu0 = rng.next_normal();
    const double s0 = std::abs(rng.next_normal()) + 0.05;
    StepConfig cfg;
    cfg.alpha = cfg.beta = 0.05 + 0.9 * rng.next_unit();
    cfg.k_samples = 1;
    cfg.lambda = lambda;
    MeanFieldState mf{Vec::Constant(1, mu0), Vec::Constant(1, s0), lambda};
    FullCovState fc{Vec::Constant(1, mu0), Mat::Constant(1, 1, s0), lambda};
    RngStream ra(2000 + trial), rb(2000 + trial);
    const MeanFieldState a = vprop_step(mf, lr, cfg, ra);
    const FullCovState b = vong_step(fc, lr, cfg, rb);
    worst_vong = std::max(
        worst_vong, std::abs(a.mu(0) - b.mu(0)) / std::max(1.0, std::abs(a.mu(0))));
    worst_vong = std::max(
        worst_vong, std::abs(a.s(0) - b.S(0, 0)) / std::max(1.0, std::abs(a.s(0))));
  }

  const bool pass = collapse_exact && worst_vong < 1e-12;
  return report(4, pass, "definitional collapses of the update family",
                fmt("vprop(K=0) == vprop0 bit-exact over 100 runs; "
                    "vong == vprop(K=1) at D=1 within %.2e",
                    worst_vong));
}

// ---------------------------------------------------------------- criterion 5

bool criterion_5() {
  RngStream rng(13);
  double worst_grad = 0.0, worst_hess = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 19);  // up to 20
    auto data = std::make_shared<const Dataset>(
        gen_logreg_synthetic(30, d, 700 + trial));
    LogisticRegression lr(data);
    const Vec theta = 0.5 * sample_std_normal(rng, d);
    auto f = [&](const Vec& t) { return lr.value(t); };

    const Vec g = lr.grad(theta);
    const Vec g_fd = fd_grad(f, theta, 1e-5);
    worst_grad = std::max(worst_grad,
                          (g - g_fd).lpNorm<Eigen::Infinity>() /
                              std::max(1.0, g_fd.lpNorm<Eigen::Infinity>()));

    const Vec h = lr.hessian_diag(theta);
    const Vec h_fd = fd_hessian_diag(f, theta, 1e-3);
    worst_hess = std::max(worst_hess,
                          (h - h_fd).lpNorm<Eigen::Infinity>() /
                              std::max(1.0, h_fd.lpNorm<Eigen::Infinity>()));
    const Vec h_full = lr.hessian_full(theta).diagonal();
    worst_hess = std::max(worst_hess,
                          (h_full - h_fd).lpNorm<Eigen::Infinity>() /
                              std::max(1.0, h_fd.lpNorm<Eigen::Infinity>()));
  }

  double worst_mlp = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d_in = 2 + static_cast<int>(rng.next_u64() % 2);
    const int width = 2 + static_cast<int>(rng.next_u64() % 2);
    MlpArchitecture arch{d_in, {width}, Activation::Tanh};
    if (arch.param_count() > 20) continue;
    auto data = std::make_shared<const Dataset>(
        gen_logreg_synthetic(8, d_in, 800 + trial));
    Mlp mlp(arch, data);
    const Vec theta = 0.5 * sample_std_normal(rng, mlp.dim());
    const Vec g = mlp.grad(theta);
    const Vec g_fd =
        fd_grad([&](const Vec& t) { return mlp.value(t); }, theta, 1e-5);
    worst_mlp = std::max(worst_mlp,
                         (g - g_fd).lpNorm<Eigen::Infinity>() /
                             std::max(1.0, g_fd.lpNorm<Eigen::Infinity>()));
  }

  const bool pass = worst_grad < 1e-5 && worst_mlp < 1e-5 && worst_hess < 1e-4;
  return report(5, pass, "analytic derivatives match finite differences",
                fmt("logreg grad %.1e, mlp grad %.1e (tol 1e-5); "
                    "hessians %.1e (tol 1e-4); 100 instances each",
                    worst_grad, worst_mlp, worst_hess));
}

// ---------------------------------------------------------------- criterion 6

struct TrackedRun {
  std::vector<Vec> mu;   // per pass
  std::vector<Vec> var;  // per pass
  double seconds = 0.0;
};

bool criterion_6() {
  const double lambda = 1e-5;
  const int passes = 1000;      // the 2%-of-exact clause is checked at pass 200
  const int checkpoint = 200;
  const int burn_in = passes / 5;

  // the real Australian-Scale file when present, otherwise a deterministic
  // stand-in of the same shape and a comparable noise level
  std::shared_ptr<const Dataset> train;
  std::string source;
  {
    const std::string path =
        std::string(VPROP_SOURCE_DIR) + "/data/australian_scale";
    std::ifstream probe(path);
    if (probe) {
      const LibsvmData parsed = load_libsvm_file(path);
      Dataset full = add_bias_and_densify(parsed.records, parsed.dim);
      auto [tr, te] = train_test_split(full, 0.5, 0);
      train = std::make_shared<const Dataset>(std::move(tr));
      source = "australian_scale";
    } else {
      ExperimentConfig data_cfg;
      data_cfg.data_kind = DataKind::SyntheticLogreg;
      data_cfg.synth_n = 690;
      data_cfg.synth_d = 14;
      data_cfg.gen_seed = 20180213;
      data_cfg.label_noise = 0.35;
      data_cfg.train_fraction = 0.5;
      data_cfg.split_seed = 0;
      data_cfg.lambda = lambda;
      AlgorithmSpec dummy{"vprop", "vprop", {}};
      data_cfg.algorithms = {dummy};
      train = build_problem(data_cfg).train;
      source = "synthetic stand-in (N=345, D=14)";
    }
  }
  LogisticRegression lr(train);
  const int d = lr.dim();
  const QuadratureRule rule = QuadratureRule::gauss_hermite(40);

  const ViExactResult exact = vi_exact_baseline(lr, lambda);
  const double slack = 0.02 * std::abs(exact.elbo.value);

  // protocol step sizes (coarse manual search on the stand-in)
  StepConfig vprop_cfg;
  vprop_cfg.alpha = 0.15;
  vprop_cfg.beta = 0.1;
  vprop_cfg.decay = 0.005;
  vprop_cfg.k_samples = 2;
  vprop_cfg.lambda = lambda;
  StepConfig cvi_cfg;
  cvi_cfg.beta = 0.15;
  cvi_cfg.decay = 0.005;
  cvi_cfg.k_samples = 10;
  cvi_cfg.lambda = lambda;
  StepConfig bbvi_cfg;
  bbvi_cfg.rho = 0.005;
  bbvi_cfg.k_samples = 10;
  bbvi_cfg.lambda = lambda;

  TrackedRun vprop_run, cvi_run;
  {
    Timer timer;
    MeanFieldState state{Vec::Zero(d), Vec::Ones(d), lambda};
    RngStream rng(21);
    for (int t = 0; t < passes; ++t) {
      state = vprop_step(state, lr, vprop_cfg.at_pass(t), rng);
      vprop_run.mu.push_back(state.mu);
      vprop_run.var.push_back(state.variance());
    }
    vprop_run.seconds = timer.seconds();
  }
  {
    Timer timer;
    MeanFieldState state{Vec::Zero(d), Vec::Ones(d), lambda};
    RngStream rng(22);
    for (int t = 0; t < passes; ++t) {
      state = cvi_meanfield_step(state, lr, cvi_cfg.at_pass(t), rng);
      cvi_run.mu.push_back(state.mu);
      cvi_run.var.push_back(state.variance());
    }
    cvi_run.seconds = timer.seconds();
  }
  // BBVI runs exactly the 200 passes its clause covers; long constant-step
  // runs eventually drive sigma into the clamp and the entropy term rebounds
  Vec bbvi_mu, bbvi_var;
  double bbvi_seconds = 0.0;
  {
    Timer timer;
    BbviState state{Vec::Zero(d),
                    Vec::Constant(d, 1.0 / std::sqrt(lambda + 1.0))};
    RngStream rng(23);
    for (int t = 0; t < checkpoint; ++t) state = bbvi_step(state, lr, bbvi_cfg, rng);
    bbvi_mu = state.mu;
    bbvi_var = state.sigma.cwiseProduct(state.sigma);
    bbvi_seconds = timer.seconds();
  }

  auto quad_elbo = [&](const Vec& mu, const Vec& var) {
    return elbo_quadrature(lr, mu, var, lambda, rule).value;
  };
  const std::size_t cp = checkpoint - 1;
  const double vprop_200 = quad_elbo(vprop_run.mu[cp], vprop_run.var[cp]);
  const double cvi_200 = quad_elbo(cvi_run.mu[cp], cvi_run.var[cp]);
  const double bbvi_200 = quad_elbo(bbvi_mu, bbvi_var);
  const bool finals_ok = vprop_200 >= exact.elbo.value - slack &&
                         cvi_200 >= exact.elbo.value - slack &&
                         bbvi_200 >= exact.elbo.value - slack;

  // band clause: the exact (quadrature) Vprop-2 curve must stay within the
  // width a K=10 Monte-Carlo ELBO estimate of CVI-10 carries
  bool band_ok = true;
  double worst_margin = -1e9;
  int worst_pass = -1;
  for (int t = burn_in; t < passes; ++t) {
    const auto ti = static_cast<std::size_t>(t);
    const double lv = quad_elbo(vprop_run.mu[ti], vprop_run.var[ti]);
    const double lc = quad_elbo(cvi_run.mu[ti], cvi_run.var[ti]);
    RngStream width_rng = RngStream(99).fork(static_cast<std::uint64_t>(t));
    const Vec sig_c = cvi_run.var[ti].cwiseSqrt();
    double f_sum = 0.0, f_sq = 0.0;
    const int k_width = 200;
    for (int j = 0; j < k_width; ++j) {
      const Vec eps = sample_std_normal(width_rng, d);
      const double f = lr.value(cvi_run.mu[ti] + sig_c.cwiseProduct(eps));
      f_sum += f;
      f_sq += f * f;
    }
    const double f_mean = f_sum / k_width;
    const double sd_f = std::sqrt(
        std::max(0.0, (f_sq / k_width - f_mean * f_mean) * k_width /
                          (k_width - 1.0)));
    const double band = sd_f / std::sqrt(10.0);  // CVI-10 sample count
    const double margin = std::abs(lv - lc) - band;
    if (margin > worst_margin) {
      worst_margin = margin;
      worst_pass = t;
    }
    if (margin > 0.0) band_ok = false;
  }

  const double max_run_seconds =
      std::max({vprop_run.seconds, cvi_run.seconds, bbvi_seconds});
  const bool pass = finals_ok && band_ok && max_run_seconds < 120.0;
  return report(
      6, pass, "logistic-regression convergence against the exact bound",
      fmt("%s; vi-exact %.3f, pass-200 gaps vprop2 %.3f cvi10 %.3f bbvi %.3f "
          "(slack %.3f); band worst margin %.3f at pass %d; "
          "slowest run %.1fs < 120s",
          source.c_str(), exact.elbo.value, exact.elbo.value - vprop_200,
          exact.elbo.value - cvi_200, exact.elbo.value - bbvi_200, slack,
          worst_margin, worst_pass, max_run_seconds));
}

// ---------------------------------------------------------------- criterion 7

bool criterion_7() {
  Timer timer;
  const ExperimentConfig cfg =
      load_config(std::string(VPROP_SOURCE_DIR) + "/configs/mlp_synth.toml");
  const ExperimentResult result = run_experiment(cfg);
  for (const auto& run : result.runs)
    if (!run.error.empty())
      return report(7, false, "MLP overfitting contrast",
                    "run aborted: " + run.error);

  struct MinFinal {
    double min = 1e300;
    double final_value = 0.0;
  };
  std::map<std::string, std::map<std::uint64_t, MinFinal>> stats;
  for (const auto& rec : result.records) {
    auto& cell = stats[rec.algorithm][rec.seed];
    cell.min = std::min(cell.min, rec.test_logloss);
    cell.final_value = rec.test_logloss;
  }

  auto rising_seeds = [&](const std::string& alg) {
    int count = 0;
    for (const auto& [seed, mf] : stats[alg])
      if (mf.final_value >= 1.02 * mf.min) ++count;
    return count;
  };
  const int rms_rising = rising_seeds("rmsprop");
  const int v0_rising = rising_seeds("vprop-0");

  bool vprop2_flat = true;
  double vprop2_worst = 0.0;
  for (const auto& [seed, mf] : stats["vprop-2"]) {
    const double rel = mf.final_value / mf.min - 1.0;
    vprop2_worst = std::max(vprop2_worst, rel);
    if (mf.final_value > 1.01 * mf.min) vprop2_flat = false;
  }

  const double secs = timer.seconds();
  const bool pass =
      rms_rising >= 2 && v0_rising >= 2 && vprop2_flat && secs < 600.0;
  return report(7, pass, "MLP overfitting contrast across update families",
                fmt("test log-loss rise >= 2%%: rmsprop %d/3 seeds, vprop-0 "
                    "%d/3; vprop-2 final within %.2f%% of its minimum "
                    "(tol 1%%); %.0fs < 600s",
                    rms_rising, v0_rising, 100.0 * vprop2_worst, secs));
}

// ---------------------------------------------------------------- criterion 8

bool criterion_8() {
  bool pass = true;
  std::string detail;
  for (int d : {1, 5, 123, 4096}) {
    const MeanFieldState state = MeanFieldState::init(d, 1.0);
    const std::size_t mean_field = state.real_count();
    const std::size_t adaptive = bbvi_adaptive_real_count(
        static_cast<std::size_t>(d));
    if (mean_field != 2 * static_cast<std::size_t>(d) + 1) pass = false;
    if (adaptive != 4 * static_cast<std::size_t>(d)) pass = false;
    // half the adaptive-BBVI footprint, up to the scalar prior precision
    if (2 * mean_field > adaptive + 2) pass = false;
    if (d == 123)
      detail = fmt("D=123: mean-field stores %zu reals (2D+1), adaptive BBVI "
                   "layout %zu (4D)",
                   mean_field, adaptive);
  }
  return report(8, pass, "mean-field state memory audit", detail);
}

// ---------------------------------------------------------------- criterion 9

bool criterion_9() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"conjugate.toml", "synth_logreg.toml"}) {
    const ExperimentConfig cfg =
        load_config(std::string(VPROP_SOURCE_DIR) + "/configs/" + name);
    const std::string a = trace_csv_string(run_experiment(cfg).records);
    const std::string b = trace_csv_string(run_experiment(cfg).records);
    if (a != b) {
      pass = false;
      detail += fmt("%s differs between runs; ", name);
    } else {
      detail += fmt("%s: %zu identical bytes; ", name, a.size());
    }
  }
  return report(9, pass, "byte-identical traces from repeated runs", detail);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  const std::map<int, std::function<bool()>> criteria = {
      {1, criterion_1}, {2, criterion_2}, {3, criterion_3},
      {4, criterion_4}, {5, criterion_5}, {6, criterion_6},
      {7, criterion_7}, {8, criterion_8}, {9, criterion_9},
  };

  bool all_pass = true;
  try {
    if (which == "all") {
      for (const auto& [n, fn] : criteria) all_pass = fn() && all_pass;
    } else {
      const int n = std::stoi(which);
      const auto it = criteria.find(n);
      if (it == criteria.end()) {
        std::fprintf(stderr, "error: criterion must be 1..9 or 'all'\n");
        return 2;
      }
      all_pass = it->second();
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return all_pass ? 0 : 1;
}
