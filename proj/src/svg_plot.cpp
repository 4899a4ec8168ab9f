#include "vprop/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

namespace vprop {

namespace {

constexpr double kWidth = 640.0, kHeight = 420.0;
constexpr double kLeft = 72.0, kRight = 24.0, kTop = 24.0, kBottom = 52.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (pass, value)
  bool reference = false;  // single-pass series drawn as a horizontal line
};

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::vector<Series> build_series(const std::vector<TraceRecord>& records,
                                 PlotMetric metric) {
  std::vector<std::string> order;
  std::map<std::string, std::map<int, std::pair<double, int>>> sums;
  for (const TraceRecord& r : records) {
    const double v = metric == PlotMetric::Elbo ? r.elbo : r.test_logloss;
    if (!std::isfinite(v)) continue;
    if (sums.find(r.algorithm) == sums.end()) order.push_back(r.algorithm);
    auto& cell = sums[r.algorithm][r.pass];
    cell.first += v;
    cell.second += 1;
  }

  std::vector<Series> series;
  int max_passes = 0;
  for (const std::string& name : order)
    max_passes = std::max(max_passes,
                          static_cast<int>(sums[name].size()));
  for (const std::string& name : order) {
    Series s;
    s.name = name;
    for (const auto& [pass, cell] : sums[name])
      s.points.emplace_back(pass, cell.first / cell.second);
    s.reference = s.points.size() == 1 && max_passes > 1;
    series.push_back(std::move(s));
  }
  return series;
}

}  // namespace

PlotMetric parse_metric(const std::string& name) {
  if (name == "elbo") return PlotMetric::Elbo;
  if (name == "logloss") return PlotMetric::Logloss;
  throw Error("unknown metric '" + name + "' (expected elbo or logloss)");
}

std::string render_svg_plot(const std::vector<TraceRecord>& records,
                            PlotMetric metric) {
  if (records.empty()) throw Error("render_svg_plot: no records");
  const std::vector<Series> series = build_series(records, metric);
  if (series.empty())
    throw Error("render_svg_plot: no finite values for this metric");

  double x_min = 0.0, x_max = 1.0;
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();
  bool first = true;
  for (const Series& s : series)
    for (const auto& [pass, value] : s.points) {
      if (!s.reference) {
        if (first) {
          x_min = x_max = pass;
          first = false;
        } else {
          x_min = std::min(x_min, pass);
          x_max = std::max(x_max, pass);
        }
      }
      y_min = std::min(y_min, value);
      y_max = std::max(y_max, value);
    }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) {
    y_min -= 1.0;
    y_max += 1.0;
  }
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double pass) {
    return kLeft + plot_w * (pass - x_min) / (x_max - x_min);
  };
  auto sy = [&](double value) {
    return kTop + plot_h * (1.0 - (value - y_min) / (y_max - y_min));
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
         "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) +
         " " + fmt(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
         fmt(kLeft) + "\" y2=\"" + fmt(kHeight - kBottom) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kHeight - kBottom) +
         "\" x2=\"" + fmt(kWidth - kRight) + "\" y2=\"" +
         fmt(kHeight - kBottom) + "\" stroke=\"black\"/>\n";

  // ticks
  for (int i = 0; i <= 5; ++i) {
    const double pass = x_min + (x_max - x_min) * i / 5.0;
    const double x = sx(pass);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kHeight - kBottom) +
           "\" x2=\"" + fmt(x) + "\" y2=\"" + fmt(kHeight - kBottom + 5) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kHeight - kBottom + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\">" +
           fmt(std::round(pass)) + "</text>\n";

    const double value = y_min + (y_max - y_min) * i / 5.0;
    const double y = sy(value);
    svg += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(kLeft) + "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(y + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + fmt(value) +
           "</text>\n";
  }

  // axis labels
  svg += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" +
         fmt(kHeight - 10) +
         "\" font-size=\"13\" text-anchor=\"middle\">data passes</text>\n";
  const std::string metric_label =
      metric == PlotMetric::Elbo ? "ELBO" : "test log-loss";
  svg += "<text x=\"16\" y=\"" + fmt(kTop + plot_h / 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt(kTop + plot_h / 2) + ")\">" + metric_label + "</text>\n";

  // series
  int color_idx = 0;
  double legend_y = kTop + 12.0;
  for (const Series& s : series) {
    const std::string color =
        kPalette[color_idx % (sizeof(kPalette) / sizeof(kPalette[0]))];
    ++color_idx;
    if (s.reference) {
      const double y = sy(s.points.front().second);
      svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
             fmt(kWidth - kRight) + "\" y2=\"" + fmt(y) + "\" stroke=\"" +
             color + "\" stroke-dasharray=\"6 4\" fill=\"none\"/>\n";
    } else {
      std::string points;
      for (const auto& [pass, value] : s.points) {
        if (!points.empty()) points += ' ';
        points += fmt(sx(pass)) + "," + fmt(sy(value));
      }
      svg += "<polyline points=\"" + points + "\" stroke=\"" + color +
             "\" fill=\"none\" stroke-width=\"1.5\"/>\n";
    }

    const double lx = kWidth - kRight - 150.0;
    svg += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(legend_y - 4) +
           "\" x2=\"" + fmt(lx + 22) + "\" y2=\"" + fmt(legend_y - 4) +
           "\" stroke=\"" + color + "\"" +
           (s.reference ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    svg += "<text x=\"" + fmt(lx + 28) + "\" y=\"" + fmt(legend_y) +
           "\" font-size=\"12\">" + escape_xml(s.name) + "</text>\n";
    legend_y += 16.0;
  }

  svg += "</svg>\n";
  return svg;
}

void render_svg_plot(const std::vector<TraceRecord>& records, PlotMetric metric,
                     const std::string& path) {
  const std::string body = render_svg_plot(records, metric);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("render_svg_plot: cannot write '" + path + "'");
  out << body;
}

}  // namespace vprop
