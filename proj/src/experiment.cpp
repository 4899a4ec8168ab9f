#include "vprop/experiment.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <variant>

#include "vprop/elbo.hpp"
#include "vprop/libsvm.hpp"
#include "vprop/log_loss.hpp"
#include "vprop/split.hpp"
#include "vprop/steps.hpp"
#include "vprop/vi_exact.hpp"

namespace vprop {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// stable 64-bit name hash for per-algorithm stream tags
std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 0xCBF29CE484222325ull;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001B3ull;
  }
  return hash;
}

// fork tags for the independent stream families of one run
constexpr std::uint64_t kInitTag = 0x1717;
constexpr std::uint64_t kShuffleTag = 0x5a5a;
constexpr std::uint64_t kEvalTag = 0xe7a1;

bool name_suggests_prescaled(const std::string& path) {
  std::string lower;
  for (char ch : path) lower += static_cast<char>(std::tolower(ch));
  return lower.find("scale") != std::string::npos;
}

using AnyState =
    std::variant<RmsState, MeanFieldState, BbviState, FullCovState, Vec>;

AnyState init_state(const AlgorithmSpec& alg, int d, double lambda,
                    const Vec& mu0) {
  const std::string& kind = alg.kind;
  if (kind == "rmsprop") {
    RmsState s = RmsState::init(d);
    s.mu = mu0;
    s.s = Vec::Constant(d, alg.init_s);
    return s;
  }
  if (kind == "vprop" || kind == "vprop0" || kind == "cvi") {
    MeanFieldState s = MeanFieldState::init(d, lambda);
    s.mu = mu0;
    s.s = Vec::Constant(d, alg.init_s);
    return s;
  }
  if (kind == "bbvi") {
    BbviState s = BbviState::init(d, lambda);
    s.mu = mu0;
    if (alg.init_s > 0.0)
      s.sigma = Vec::Constant(d, 1.0 / std::sqrt(lambda + alg.init_s));
    return s;
  }
  if (kind == "von" || kind == "vong") {
    FullCovState s = FullCovState::init(d, lambda);
    s.mu = mu0;
    s.S = alg.init_s * Mat::Identity(d, d);
    return s;
  }
  if (kind == "newton") return mu0;
  throw Error("init_state: unhandled algorithm kind '" + kind + "'");
}

AnyState advance(const AnyState& state, const std::string& kind,
                 const Objective& obj, const StepConfig& cfg, RngStream& rng) {
  if (kind == "rmsprop")
    return rmsprop_step(std::get<RmsState>(state), obj, cfg);
  if (kind == "vprop")
    return vprop_step(std::get<MeanFieldState>(state), obj, cfg, rng);
  if (kind == "vprop0")
    return vprop0_step(std::get<MeanFieldState>(state), obj, cfg);
  if (kind == "cvi")
    return cvi_meanfield_step(std::get<MeanFieldState>(state), obj, cfg, rng);
  if (kind == "bbvi")
    return bbvi_step(std::get<BbviState>(state), obj, cfg, rng);
  if (kind == "von")
    return von_step(std::get<FullCovState>(state), obj, cfg, rng);
  if (kind == "vong")
    return vong_step(std::get<FullCovState>(state), obj, cfg, rng);
  if (kind == "newton") return newton_step(std::get<Vec>(state), obj, cfg.rho);
  throw Error("advance: unhandled algorithm kind '" + kind + "'");
}

std::optional<GaussianPosterior> state_posterior(const AnyState& state) {
  if (const auto* mf = std::get_if<MeanFieldState>(&state))
    return GaussianPosterior(mf->posterior());
  if (const auto* bbvi = std::get_if<BbviState>(&state))
    return GaussianPosterior(bbvi->posterior());
  if (const auto* full = std::get_if<FullCovState>(&state))
    return GaussianPosterior(full->posterior());
  return std::nullopt;
}

std::optional<Vec> state_point(const AnyState& state) {
  if (const auto* rms = std::get_if<RmsState>(&state)) return rms->mu;
  if (const auto* theta = std::get_if<Vec>(&state)) return *theta;
  return std::nullopt;
}

struct Evaluator {
  const ExperimentConfig& cfg;
  const Problem& problem;
  QuadratureRule rule;

  explicit Evaluator(const ExperimentConfig& config, const Problem& prob)
      : cfg(config), problem(prob),
        rule(QuadratureRule::gauss_hermite(config.quad_order)) {}

  // resolves the configured estimator for this posterior shape
  ElboMethod method(bool diag_state) const {
    if (cfg.elbo_method != ElboMethod::Auto) return cfg.elbo_method;
    if (problem.model == ModelKind::Quadratic) return ElboMethod::Exact;
    if (problem.model == ModelKind::Logreg && diag_state)
      return ElboMethod::Quadrature;
    return ElboMethod::Mc;
  }

  ElboEstimate elbo(const GaussianPosterior& post, RngStream& rng) const {
    const auto* diag = std::get_if<DiagGaussian>(&post);
    switch (method(diag != nullptr)) {
      case ElboMethod::Exact:
        if (problem.quadratic == nullptr)
          throw CapabilityError("exact ELBO needs the quadratic model");
        return elbo_exact_quadratic(*problem.quadratic, post, cfg.lambda);
      case ElboMethod::Quadrature:
        if (problem.logreg == nullptr || diag == nullptr)
          throw CapabilityError(
              "quadrature ELBO needs logreg and a factorized state");
        return elbo_quadrature(*problem.logreg, diag->mu, diag->var,
                               cfg.lambda, rule);
      default:
        return elbo_mc(*problem.objective, post, cfg.lambda, cfg.elbo_samples,
                       rng);
    }
  }

  double logloss(const GaussianPosterior& post, RngStream& rng,
                 bool deterministic) const {
    if (problem.test.n() < 1 || problem.classifier() == nullptr) return kNaN;
    return test_log_loss(*problem.classifier(), post, problem.test,
                         cfg.logloss_samples, rng, deterministic);
  }
};

}  // namespace

const BinaryClassifier* Problem::classifier() const {
  if (logreg != nullptr) return logreg.get();
  if (mlp != nullptr) return mlp.get();
  return nullptr;
}

int Problem::dim() const { return objective->dim(); }

Problem build_problem(const ExperimentConfig& cfg) {
  Problem problem;
  problem.model = cfg.model;

  if (cfg.data_kind == DataKind::ConjugateQuadratic) {
    problem.conjugate = gen_conjugate_quadratic(cfg.synth_d, cfg.gen_seed);
    problem.quadratic = problem.conjugate->objective;
    problem.objective = problem.quadratic;
    problem.test = Dataset{Mat(0, cfg.synth_d), Vec(0)};
    return problem;
  }

  Dataset full;
  bool prescaled = false;
  if (cfg.data_kind == DataKind::LibsvmFile) {
    const LibsvmData parsed = load_libsvm_file(cfg.data_path);
    full = add_bias_and_densify(parsed.records, parsed.dim);
    prescaled = name_suggests_prescaled(cfg.data_path);
  } else {
    full = gen_logreg_synthetic(cfg.synth_n, cfg.synth_d, cfg.gen_seed);
    prescaled = true;  // standard-normal features need no rescaling
    if (cfg.label_noise > 0.0) {
      RngStream flip(RngStream(cfg.gen_seed).fork(0xf11b).seed());
      for (int i = 0; i < full.n(); ++i)
        if (flip.next_unit() < cfg.label_noise) full.y(i) = -full.y(i);
    }
  }
  full.validate();

  auto [train, test] = train_test_split(full, cfg.train_fraction, cfg.split_seed);
  const bool normalize = cfg.normalize == -1 ? !prescaled : cfg.normalize == 1;
  if (normalize) maxabs_scale(train, test);

  problem.train = std::make_shared<const Dataset>(std::move(train));
  problem.test = std::move(test);

  if (cfg.model == ModelKind::Logreg) {
    problem.logreg = std::make_shared<LogisticRegression>(problem.train);
    problem.objective = problem.logreg;
  } else {
    MlpArchitecture arch;
    arch.input_dim = problem.train->d();
    arch.hidden = cfg.hidden;
    arch.activation = activation_from_name(cfg.activation);
    problem.mlp = std::make_shared<Mlp>(arch, problem.train);
    problem.objective = problem.mlp;
  }
  return problem;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Problem problem = build_problem(cfg);
  const Evaluator evaluator(cfg, problem);
  const int n_train = problem.train ? problem.train->n() : 0;

  ExperimentResult result;

  for (const AlgorithmSpec& alg : cfg.algorithms) {
    if (alg.kind == "vi_exact") {
      // deterministic reference; one run regardless of the seed list
      RunSummary summary;
      summary.algorithm = alg.name;
      summary.seed = cfg.seeds.front();
      try {
        ViExactResult exact =
            problem.model == ModelKind::Quadratic
                ? vi_exact_baseline(*problem.quadratic, cfg.lambda)
                : vi_exact_baseline(*problem.logreg, cfg.lambda);
        TraceRecord rec;
        rec.run_id = alg.name + "-s" + std::to_string(summary.seed);
        rec.algorithm = alg.name;
        rec.seed = summary.seed;
        rec.pass = 0;
        rec.elbo = exact.elbo.value;
        rec.elbo_se = exact.elbo.std_error;
        RngStream logloss_rng = RngStream(summary.seed).fork(kEvalTag).fork(1);
        rec.test_logloss = evaluator.logloss(
            GaussianPosterior(exact.state.posterior()), logloss_rng, false);
        rec.wall_ms = 0.0;
        result.records.push_back(std::move(rec));
        summary.posterior = GaussianPosterior(exact.state.posterior());
      } catch (const Error& e) {
        summary.error = e.what();
      }
      result.runs.push_back(std::move(summary));
      continue;
    }

    for (const std::uint64_t seed : cfg.seeds) {
      RunSummary summary;
      summary.algorithm = alg.name;
      summary.seed = seed;
      const std::string run_id = alg.name + "-s" + std::to_string(seed);

      // initial mean shared by every algorithm under the same seed
      Vec mu0 = Vec::Zero(problem.dim());
      if (cfg.init_scale > 0.0) {
        RngStream init_rng = RngStream(seed).fork(kInitTag);
        mu0 = cfg.init_scale * sample_std_normal(init_rng, problem.dim());
      }

      BatchSpec batch_spec;
      batch_spec.batch_size = cfg.batch_size;
      batch_spec.shuffle_seed = RngStream(seed).fork(kShuffleTag).seed();

      try {
        AnyState state = init_state(alg, problem.dim(), cfg.lambda, mu0);
        RngStream step_rng = RngStream(seed).fork(fnv1a64(alg.name));

        for (int pass = 0; pass < cfg.passes; ++pass) {
          const auto start = std::chrono::steady_clock::now();
          const StepConfig step_cfg = alg.step.at_pass(pass);
          if (n_train > 0 && cfg.batch_size > 0 &&
              cfg.batch_size < n_train) {
            for (const auto& batch :
                 make_minibatches(n_train, batch_spec, pass)) {
              if (problem.logreg) {
                state = advance(state, alg.kind,
                                problem.logreg->minibatch(batch), step_cfg,
                                step_rng);
              } else {
                state = advance(state, alg.kind, problem.mlp->minibatch(batch),
                                step_cfg, step_rng);
              }
            }
          } else {
            state = advance(state, alg.kind, *problem.objective, step_cfg,
                            step_rng);
          }

          if (pass % cfg.eval_every != 0 && pass != cfg.passes - 1) continue;

          TraceRecord rec;
          rec.run_id = run_id;
          rec.algorithm = alg.name;
          rec.seed = seed;
          rec.pass = pass;
          const std::optional<GaussianPosterior> post = state_posterior(state);
          if (post.has_value()) {
            RngStream elbo_rng = RngStream(seed).fork(kEvalTag).fork(
                2 * static_cast<std::uint64_t>(pass));
            const ElboEstimate est = evaluator.elbo(*post, elbo_rng);
            rec.elbo = est.value;
            rec.elbo_se = est.std_error;
            RngStream logloss_rng = RngStream(seed).fork(kEvalTag).fork(
                2 * static_cast<std::uint64_t>(pass) + 1);
            rec.test_logloss = evaluator.logloss(*post, logloss_rng, false);
          } else {
            rec.elbo = kNaN;
            rec.elbo_se = kNaN;
            const Vec point = *state_point(state);
            RngStream logloss_rng = RngStream(seed).fork(kEvalTag).fork(
                2 * static_cast<std::uint64_t>(pass) + 1);
            rec.test_logloss = evaluator.logloss(
                GaussianPosterior(
                    DiagGaussian{point, Vec::Zero(point.size())}),
                logloss_rng, true);
          }
          if (cfg.record_timing) {
            rec.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
          }
          result.records.push_back(std::move(rec));
        }

        summary.posterior = state_posterior(state);
        summary.point_estimate = state_point(state);
      } catch (const Error& e) {
        summary.error = e.what();  // truncated trace stays in the records
      }
      result.runs.push_back(std::move(summary));
    }
  }
  return result;
}

}  // namespace vprop
