#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vprop/states.hpp"
#include "vprop/toml.hpp"

namespace vprop {

enum class DataKind { LibsvmFile, SyntheticLogreg, ConjugateQuadratic };
enum class ModelKind { Logreg, Mlp, Quadratic };
enum class ElboMethod { Auto, Quadrature, Mc, Exact };

/// One optimizer entry from [algorithms.<name>]; `name` labels traces and
/// plots, `kind` picks the registered step.
struct AlgorithmSpec {
  std::string name;
  std::string kind;
  StepConfig step;
  /// Initial scale s0 (mean-field s = s0 * ones, full-covariance S = s0 * I).
  /// The exact-Hessian updates need it at tiny prior precision: from s0 = 0
  /// the first samples saturate the logits, the Hessian vanishes, and the
  /// sigma^2-scaled mean step blows up.
  double init_s = 0.0;
};

/// Registered step kinds: rmsprop, vprop, vprop0, cvi, bbvi, von, vong,
/// newton, vi_exact.
bool is_registered_algorithm(const std::string& kind);

struct ExperimentConfig {
  // [experiment]
  int passes = 100;
  int batch_size = 0;  // 0 = full batch
  std::vector<std::uint64_t> seeds{0};
  int eval_every = 1;
  std::string out_dir = "out";
  double init_scale = 0.0;     // mu_0 = init_scale * N(0, I); 0 keeps mu_0 = 0
  bool record_timing = false;  // off keeps CSV output byte-deterministic

  // [data]
  DataKind data_kind = DataKind::SyntheticLogreg;
  std::string data_path;
  int synth_n = 100;
  int synth_d = 5;
  std::uint64_t gen_seed = 0;
  double label_noise = 0.0;  // synthetic data: fraction of labels flipped
  double train_fraction = 0.5;
  std::uint64_t split_seed = 0;
  int normalize = -1;  // -1 auto (skip when the file name contains "scale")

  // [model]
  ModelKind model = ModelKind::Logreg;
  std::vector<int> hidden{10, 10};
  std::string activation = "tanh";

  // [prior]
  double lambda = 1.0;

  // [eval]
  ElboMethod elbo_method = ElboMethod::Auto;
  int elbo_samples = 100;
  int logloss_samples = 100;
  int quad_order = 40;

  std::vector<AlgorithmSpec> algorithms;

  void validate() const;  // cross-field checks, throws ConfigError
};

/// Strict loader: unknown keys are rejected with their full path, required
/// keys are reported when missing, defaults fill the rest.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_toml(const TomlValue& root);

}  // namespace vprop
