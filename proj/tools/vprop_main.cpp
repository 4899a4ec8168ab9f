#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "oracle_suites.hpp"
#include "vprop/svg_plot.hpp"
#include "vprop/trace_csv.hpp"

using namespace vprop;

namespace {

int run_fit(const std::string& config_path, const std::string& out_override,
            int seed_override, int passes_override) {
  ExperimentConfig cfg = load_config(config_path);
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (seed_override >= 0)
    cfg.seeds = {static_cast<std::uint64_t>(seed_override)};
  if (passes_override > 0) cfg.passes = passes_override;
  cfg.validate();

  const ExperimentResult result = run_experiment(cfg);
  for (const RunSummary& run : result.runs)
    if (!run.error.empty())
      std::fprintf(stderr, "warning: %s seed %llu aborted: %s\n",
                   run.algorithm.c_str(),
                   static_cast<unsigned long long>(run.seed),
                   run.error.c_str());

  std::filesystem::create_directories(cfg.out_dir);
  const std::string csv_path = cfg.out_dir + "/trace.csv";
  write_trace_csv(result.records, csv_path);
  std::printf("wrote %s (%zu records)\n", csv_path.c_str(),
              result.records.size());

  for (const auto& [metric, name] :
       {std::pair{PlotMetric::Elbo, std::string("elbo")},
        std::pair{PlotMetric::Logloss, std::string("logloss")}}) {
    const std::string svg_path = cfg.out_dir + "/" + name + ".svg";
    try {
      render_svg_plot(result.records, metric, svg_path);
      std::printf("wrote %s\n", svg_path.c_str());
    } catch (const Error& e) {
      std::fprintf(stderr, "skipping %s plot: %s\n", name.c_str(), e.what());
    }
  }
  return 0;
}

int run_plot(const std::string& trace_path, const std::string& metric_name,
             const std::string& out_path) {
  const auto records = read_trace_csv(trace_path);
  render_svg_plot(records, parse_metric(metric_name), out_path);
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian variational inference via adaptive-gradient updates"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int seed_override = -1, passes_override = 0;
  CLI::App* fit = app.add_subcommand("fit", "run an experiment config");
  fit->add_option("--config", config_path, "TOML experiment config")
      ->required();
  fit->add_option("--out", out_dir, "output directory (overrides config)");
  fit->add_option("--seed", seed_override, "single seed (overrides config)");
  fit->add_option("--passes", passes_override, "data passes (overrides config)");

  std::string trace_path, metric_name = "elbo", svg_path = "plot.svg";
  CLI::App* plot = app.add_subcommand("plot", "render an SVG from a trace CSV");
  plot->add_option("--trace", trace_path, "trace CSV path")->required();
  plot->add_option("--metric", metric_name, "elbo or logloss");
  plot->add_option("--out", svg_path, "output SVG path");

  std::string suite_name = "all";
  CLI::App* oracle =
      app.add_subcommand("oracle", "print brute-force oracle values");
  oracle->add_option("--suite", suite_name, "suite name or 'all'");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed())
      return run_fit(config_path, out_dir, seed_override, passes_override);
    if (plot->parsed()) return run_plot(trace_path, metric_name, svg_path);
    run_oracle_suite(suite_name);
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
