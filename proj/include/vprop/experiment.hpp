#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vprop/config.hpp"
#include "vprop/logreg.hpp"
#include "vprop/mlp.hpp"
#include "vprop/predictive.hpp"
#include "vprop/synthetic.hpp"

namespace vprop {

/// One (run, pass) measurement. elbo and test_logloss are NaN where the
/// algorithm has no posterior (point estimates) or the problem has no test
/// set. wall_ms stays 0 unless the config enables timing, which keeps the
/// CSV byte-deterministic.
struct TraceRecord {
  std::string run_id;
  std::string algorithm;
  std::uint64_t seed = 0;
  int pass = 0;
  double elbo = 0.0;
  double elbo_se = 0.0;
  double test_logloss = 0.0;
  double wall_ms = 0.0;
};

/// Outcome of one (algorithm, seed) run. A step error aborts the run: the
/// records collected so far stay in the trace and `error` holds the message.
struct RunSummary {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::string error;
  std::optional<GaussianPosterior> posterior;
  std::optional<Vec> point_estimate;
};

struct ExperimentResult {
  std::vector<TraceRecord> records;
  std::vector<RunSummary> runs;
};

/// The dataset/model/objective bundle a config describes.
struct Problem {
  std::shared_ptr<const Dataset> train;
  Dataset test;  // zero rows when the problem has no test side
  std::shared_ptr<Objective> objective;
  std::shared_ptr<LogisticRegression> logreg;  // set when model is logreg
  std::shared_ptr<Mlp> mlp;                    // set when model is MLP
  std::shared_ptr<QuadraticObjective> quadratic;
  std::optional<ConjugateQuadratic> conjugate;
  ModelKind model = ModelKind::Logreg;

  const BinaryClassifier* classifier() const;
  int dim() const;
};

Problem build_problem(const ExperimentConfig& cfg);

/// Runs every (algorithm, seed) pair sequentially and deterministically.
/// Evaluation uses RNG streams forked from (seed, pass) only, so it never
/// perturbs optimizer state and two algorithms see common random numbers at
/// the same pass. vi_exact runs once per problem and emits a single pass-0
/// record that plots treat as a horizontal reference.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace vprop
