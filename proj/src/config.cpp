#include "vprop/config.hpp"

#include <algorithm>
#include <set>

namespace vprop {

namespace {

const std::set<std::string> kAlgorithmKinds = {
    "rmsprop", "vprop", "vprop0", "cvi", "bbvi",
    "von",     "vong",  "newton", "vi_exact"};

// rejects keys outside `allowed`, naming the offending path
void check_keys(const TomlValue& table, const std::string& prefix,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : table.items())
    if (allowed.find(key) == allowed.end())
      throw ConfigError(prefix.empty() ? key : prefix + "." + key,
                        "unknown key");
}

double get_number(const TomlValue& table, const std::string& prefix,
                  const std::string& key, double fallback) {
  const TomlValue* v = table.find(key);
  if (v == nullptr) return fallback;
  try {
    return v->as_number();
  } catch (const Error&) {
    throw ConfigError(prefix + "." + key, "expected a number");
  }
}

int get_int(const TomlValue& table, const std::string& prefix,
            const std::string& key, int fallback) {
  const TomlValue* v = table.find(key);
  if (v == nullptr) return fallback;
  try {
    return static_cast<int>(v->as_integer());
  } catch (const Error&) {
    throw ConfigError(prefix + "." + key, "expected an integer");
  }
}

std::string get_string(const TomlValue& table, const std::string& prefix,
                       const std::string& key, const std::string& fallback) {
  const TomlValue* v = table.find(key);
  if (v == nullptr) return fallback;
  try {
    return v->as_string();
  } catch (const Error&) {
    throw ConfigError(prefix + "." + key, "expected a string");
  }
}

bool get_bool(const TomlValue& table, const std::string& prefix,
              const std::string& key, bool fallback) {
  const TomlValue* v = table.find(key);
  if (v == nullptr) return fallback;
  try {
    return v->as_boolean();
  } catch (const Error&) {
    throw ConfigError(prefix + "." + key, "expected a boolean");
  }
}

}  // namespace

bool is_registered_algorithm(const std::string& kind) {
  return kAlgorithmKinds.count(kind) > 0;
}

void ExperimentConfig::validate() const {
  if (passes < 1) throw ConfigError("experiment.passes", "must be >= 1");
  if (eval_every < 1) throw ConfigError("experiment.eval_every", "must be >= 1");
  if (seeds.empty()) throw ConfigError("experiment.seeds", "must be non-empty");
  if (!(lambda > 0.0)) throw ConfigError("prior.lambda", "must be > 0");
  if (algorithms.empty())
    throw ConfigError("algorithms", "at least one algorithm is required");
  for (const auto& alg : algorithms) {
    if (!is_registered_algorithm(alg.kind))
      throw ConfigError("algorithms." + alg.name + ".kind",
                        "unknown algorithm '" + alg.kind + "'");
    if (alg.kind != "vi_exact") {
      try {
        alg.step.validate();
      } catch (const Error& e) {
        throw ConfigError("algorithms." + alg.name, e.what());
      }
    }
  }
  if (label_noise < 0.0 || label_noise >= 1.0)
    throw ConfigError("data.label_noise", "must be in [0, 1)");
  if (data_kind == DataKind::LibsvmFile && data_path.empty())
    throw ConfigError("data.path", "required for libsvm data");
  if (data_kind == DataKind::ConjugateQuadratic && model != ModelKind::Quadratic)
    throw ConfigError("model.kind",
                      "conjugate_quadratic data requires the quadratic model");
  if (model == ModelKind::Quadratic &&
      data_kind != DataKind::ConjugateQuadratic)
    throw ConfigError("data.kind",
                      "the quadratic model requires conjugate_quadratic data");
  if (model == ModelKind::Mlp && hidden.empty())
    throw ConfigError("model.hidden", "must list at least one hidden layer");
  if (!(train_fraction > 0.0 && train_fraction < 1.0) &&
      data_kind != DataKind::ConjugateQuadratic)
    throw ConfigError("data.train_fraction", "must be in (0, 1)");
}

ExperimentConfig config_from_toml(const TomlValue& root) {
  ExperimentConfig cfg;
  check_keys(root, "",
             {"experiment", "data", "model", "prior", "eval", "algorithms"});

  if (const TomlValue* exp = root.find("experiment")) {
    check_keys(*exp, "experiment",
               {"passes", "batch_size", "seeds", "eval_every", "out_dir",
                "init_scale", "record_timing"});
    cfg.passes = get_int(*exp, "experiment", "passes", cfg.passes);
    cfg.batch_size = get_int(*exp, "experiment", "batch_size", cfg.batch_size);
    cfg.eval_every = get_int(*exp, "experiment", "eval_every", cfg.eval_every);
    cfg.out_dir = get_string(*exp, "experiment", "out_dir", cfg.out_dir);
    cfg.init_scale =
        get_number(*exp, "experiment", "init_scale", cfg.init_scale);
    cfg.record_timing =
        get_bool(*exp, "experiment", "record_timing", cfg.record_timing);
    if (const TomlValue* seeds = exp->find("seeds")) {
      cfg.seeds.clear();
      try {
        for (const TomlValue& s : seeds->as_array())
          cfg.seeds.push_back(static_cast<std::uint64_t>(s.as_integer()));
      } catch (const Error&) {
        throw ConfigError("experiment.seeds", "expected an array of integers");
      }
    }
  }

  if (const TomlValue* data = root.find("data")) {
    check_keys(*data, "data",
               {"kind", "path", "n", "d", "gen_seed", "train_fraction",
                "split_seed", "normalize", "label_noise"});
    const std::string kind = get_string(*data, "data", "kind", "");
    if (kind == "libsvm") {
      cfg.data_kind = DataKind::LibsvmFile;
    } else if (kind == "synthetic_logreg") {
      cfg.data_kind = DataKind::SyntheticLogreg;
    } else if (kind == "conjugate_quadratic") {
      cfg.data_kind = DataKind::ConjugateQuadratic;
    } else {
      throw ConfigError("data.kind",
                        "expected libsvm, synthetic_logreg, or "
                        "conjugate_quadratic; got '" + kind + "'");
    }
    cfg.data_path = get_string(*data, "data", "path", "");
    cfg.synth_n = get_int(*data, "data", "n", cfg.synth_n);
    cfg.synth_d = get_int(*data, "data", "d", cfg.synth_d);
    cfg.gen_seed = static_cast<std::uint64_t>(
        get_int(*data, "data", "gen_seed", static_cast<int>(cfg.gen_seed)));
    cfg.train_fraction =
        get_number(*data, "data", "train_fraction", cfg.train_fraction);
    cfg.split_seed = static_cast<std::uint64_t>(
        get_int(*data, "data", "split_seed", static_cast<int>(cfg.split_seed)));
    cfg.label_noise = get_number(*data, "data", "label_noise", cfg.label_noise);
    if (const TomlValue* normalize = data->find("normalize"))
      cfg.normalize = normalize->as_boolean() ? 1 : 0;
  } else {
    throw ConfigError("data", "missing required table");
  }

  if (const TomlValue* model = root.find("model")) {
    check_keys(*model, "model", {"kind", "hidden", "activation"});
    const std::string kind = get_string(*model, "model", "kind", "logreg");
    if (kind == "logreg") {
      cfg.model = ModelKind::Logreg;
    } else if (kind == "mlp") {
      cfg.model = ModelKind::Mlp;
    } else if (kind == "quadratic") {
      cfg.model = ModelKind::Quadratic;
    } else {
      throw ConfigError("model.kind", "expected logreg, mlp, or quadratic");
    }
    cfg.activation = get_string(*model, "model", "activation", cfg.activation);
    if (const TomlValue* hidden = model->find("hidden")) {
      cfg.hidden.clear();
      try {
        for (const TomlValue& h : hidden->as_array())
          cfg.hidden.push_back(static_cast<int>(h.as_integer()));
      } catch (const Error&) {
        throw ConfigError("model.hidden", "expected an array of integers");
      }
    }
  } else if (cfg.data_kind == DataKind::ConjugateQuadratic) {
    cfg.model = ModelKind::Quadratic;
  }

  if (const TomlValue* prior = root.find("prior")) {
    check_keys(*prior, "prior", {"lambda"});
    cfg.lambda = get_number(*prior, "prior", "lambda", cfg.lambda);
  }

  if (const TomlValue* eval = root.find("eval")) {
    check_keys(*eval, "eval",
               {"elbo", "elbo_samples", "logloss_samples", "quad_order"});
    const std::string method = get_string(*eval, "eval", "elbo", "auto");
    if (method == "auto") {
      cfg.elbo_method = ElboMethod::Auto;
    } else if (method == "quadrature") {
      cfg.elbo_method = ElboMethod::Quadrature;
    } else if (method == "mc") {
      cfg.elbo_method = ElboMethod::Mc;
    } else if (method == "exact") {
      cfg.elbo_method = ElboMethod::Exact;
    } else {
      throw ConfigError("eval.elbo", "expected auto, quadrature, mc, or exact");
    }
    cfg.elbo_samples = get_int(*eval, "eval", "elbo_samples", cfg.elbo_samples);
    cfg.logloss_samples =
        get_int(*eval, "eval", "logloss_samples", cfg.logloss_samples);
    cfg.quad_order = get_int(*eval, "eval", "quad_order", cfg.quad_order);
  }

  if (const TomlValue* algorithms = root.find("algorithms")) {
    if (!algorithms->is_table())
      throw ConfigError("algorithms", "expected a table of algorithm entries");
    for (const auto& [name, entry] : algorithms->items()) {
      const std::string prefix = "algorithms." + name;
      if (!entry.is_table()) throw ConfigError(prefix, "expected a table");
      check_keys(entry, prefix,
                 {"kind", "alpha", "beta", "rho", "delta", "k_samples",
                  "deterministic", "init_s", "decay"});
      AlgorithmSpec spec;
      spec.name = name;
      spec.kind = get_string(entry, prefix, "kind", name);
      spec.step.lambda = cfg.lambda;
      spec.step.alpha = get_number(entry, prefix, "alpha", spec.step.alpha);
      spec.step.beta = get_number(entry, prefix, "beta", spec.step.beta);
      spec.step.rho = get_number(entry, prefix, "rho", spec.step.rho);
      spec.step.delta = get_number(entry, prefix, "delta", spec.step.delta);
      spec.step.k_samples =
          get_int(entry, prefix, "k_samples", spec.step.k_samples);
      spec.step.deterministic =
          get_bool(entry, prefix, "deterministic", spec.step.deterministic);
      spec.init_s = get_number(entry, prefix, "init_s", spec.init_s);
      spec.step.decay = get_number(entry, prefix, "decay", spec.step.decay);
      cfg.algorithms.push_back(std::move(spec));
    }
  } else {
    throw ConfigError("algorithms", "missing required table");
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  return config_from_toml(parse_toml_file(path));
}

}  // namespace vprop
