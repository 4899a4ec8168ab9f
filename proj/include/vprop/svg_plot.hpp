#pragma once

#include <string>
#include <vector>

#include "vprop/experiment.hpp"

namespace vprop {

enum class PlotMetric { Elbo, Logloss };

PlotMetric parse_metric(const std::string& name);  // "elbo" | "logloss"

/// Standalone SVG convergence plot: one polyline per algorithm (seed-averaged
/// per pass), axes labeled "data passes" and the metric, and a legend.
/// A series with a single pass (the vi_exact reference) renders as a dashed
/// horizontal line. Algorithms without finite values for the metric are
/// omitted. Empty input is an error.
std::string render_svg_plot(const std::vector<TraceRecord>& records,
                            PlotMetric metric);
void render_svg_plot(const std::vector<TraceRecord>& records, PlotMetric metric,
                     const std::string& path);

}  // namespace vprop
