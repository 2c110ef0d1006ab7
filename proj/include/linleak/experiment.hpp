//===--- experiment.hpp - theory-vs-simulation grids, CSV, and SVG ----------===//
//
// Part of the linleak project, released under the Apache License v2.0.
// See LICENSE for details.
//
//===----------------------------------------------------------------------===//
//
// Batch evaluation of success rates over (budget, m) grids, in two
// framings:
//
//   fig3: each budget value is a fixed total eps_t; more samples means
//         less budget per query, so the theory curve falls with m.
//   fig4: each budget value is a fixed per-query eps; the total grows
//         with m, so the curve rises with m.
//
// Every grid cell pairs the closed-form rate with a Monte Carlo estimate.
// Output is a flat CSV (stable schema, LF endings, 6 significant digits
// for rates) and optionally a simple self-contained SVG line chart. Both
// are byte-deterministic functions of the spec, seed included.
//
//===----------------------------------------------------------------------===//

#ifndef LINLEAK_EXPERIMENT_HPP
#define LINLEAK_EXPERIMENT_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "linleak/analysis.hpp"
#include "linleak/rng.hpp"
#include "linleak/stats.hpp"

namespace linleak {

struct ExperimentRow {
  std::string mode;  // "fig3" or "fig4"
  int m = 0;
  double budget = 0.0;  // eps_t (fig3) or per-query eps (fig4)
  double r_theory = 0.0;
  double r_empirical = 0.0;
  double stderr_est = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;  // master seed, echoed for reproducibility
};

struct GridSpec {
  std::string mode = "fig3";  // "fig3" or "fig4"
  double budget_min = 0.0;
  double budget_max = 0.0;
  int budget_steps = 0;
  int m_min = 4;
  int m_max = 29;
  int trials = 10000;
  std::uint64_t seed = 1;
  VarianceDivisor s_divisor = VarianceDivisor::M;

  void validate() const {
    if (mode != "fig3" && mode != "fig4")
      throw std::invalid_argument("GridSpec: mode must be fig3 or fig4");
    if (!(budget_min > 0.0) || !(budget_max >= budget_min))
      throw std::invalid_argument(
          "GridSpec: budgets must be positive with min <= max");
    if (budget_steps < 1)
      throw std::invalid_argument("GridSpec: need at least one budget step");
    if (m_min < 2 || m_max < m_min || m_max > 10000)
      throw std::invalid_argument("GridSpec: m range must satisfy 2 <= min <= max <= 10000");
    if (trials < 100 || trials % 2 != 0)
      throw std::invalid_argument("GridSpec: trials must be even and >= 100");
  }
};

// Evenly spaced budget values, budget_min and budget_max inclusive.
inline std::vector<double> budget_grid(const GridSpec& spec) {
  std::vector<double> budgets;
  if (spec.budget_steps == 1) {
    budgets.push_back(spec.budget_min);
    return budgets;
  }
  const double step =
      (spec.budget_max - spec.budget_min) / (spec.budget_steps - 1);
  for (int i = 0; i < spec.budget_steps; ++i)
    budgets.push_back(spec.budget_min + i * step);
  return budgets;
}

// Runs the full grid: budgets outer, m inner. Cell seeds derive from the
// master seed and the cell's flat index, so any execution order (or
// worker layout) produces identical rows.
inline std::vector<ExperimentRow> run_grid(const GridSpec& spec) {
  spec.validate();
  const std::vector<double> budgets = budget_grid(spec);
  const bool per_query = spec.mode == "fig4";

  std::vector<ExperimentRow> rows;
  std::uint64_t cell = 0;
  for (double budget : budgets) {
    for (int m = spec.m_min; m <= spec.m_max; ++m, ++cell) {
      const double eps_total = per_query ? budget * m : budget;
      ExperimentRow row;
      row.mode = spec.mode;
      row.m = m;
      row.budget = budget;
      row.r_theory = per_query ? success_rate_per_query(m, budget)
                               : success_rate_total(m, budget);
      const EmpiricalRate emp = empirical_success_rate(
          m, eps_total, spec.trials, derive_seed(spec.seed, cell),
          spec.s_divisor);
      row.r_empirical = emp.rate;
      row.stderr_est = emp.stderr_est;
      row.trials = spec.trials;
      row.seed = spec.seed;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace detail {

// Shortest representation with 6 significant digits.
inline std::string format_g6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace detail

inline constexpr const char* kCsvHeader =
    "mode,m,budget,R_theory,R_empirical,stderr,trials,seed";

inline void write_csv(const std::vector<ExperimentRow>& rows,
                      std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ExperimentRow& row : rows) {
    out << row.mode << ',' << row.m << ',' << detail::format_g6(row.budget)
        << ',' << detail::format_g6(row.r_theory) << ','
        << detail::format_g6(row.r_empirical) << ','
        << detail::format_g6(row.stderr_est) << ',' << row.trials << ','
        << row.seed << '\n';
  }
}

inline void write_csv_file(const std::vector<ExperimentRow>& rows,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) throw std::runtime_error("cannot open CSV output: " + path);
  write_csv(rows, out);
  if (!out) throw std::runtime_error("failed writing CSV output: " + path);
}

namespace detail {

inline std::string svg_color(std::size_t index, std::size_t count) {
  // Evenly spaced hues, fixed saturation/lightness: deterministic and
  // distinguishable for the typical 10-curve grid.
  const int hue = static_cast<int>(360.0 * index / (count == 0 ? 1 : count));
  return "hsl(" + std::to_string(hue) + ",70%,40%)";
}

}  // namespace detail

// Renders one solid (theory) and one dashed (empirical) polyline per
// budget value: x is m, y is the success rate on a fixed [0.4, 1.0] axis,
// 800x600 viewBox. Rates outside the axis range are clamped.
inline void render_svg(const std::vector<ExperimentRow>& rows,
                       std::ostream& out) {
  if (rows.empty())
    throw std::invalid_argument("render_svg: no rows to plot");

  constexpr double kWidth = 800.0, kHeight = 600.0;
  constexpr double kLeft = 70.0, kRight = 30.0, kTop = 40.0, kBottom = 50.0;
  constexpr double kYLo = 0.4, kYHi = 1.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  int m_min = rows.front().m, m_max = rows.front().m;
  std::vector<double> budgets;
  for (const ExperimentRow& row : rows) {
    m_min = std::min(m_min, row.m);
    m_max = std::max(m_max, row.m);
    bool seen = false;
    for (double b : budgets) seen = seen || b == row.budget;
    if (!seen) budgets.push_back(row.budget);
  }
  const double m_span = m_max > m_min ? m_max - m_min : 1.0;

  auto x_of = [&](int m) { return kLeft + (m - m_min) / m_span * plot_w; };
  auto y_of = [&](double r) {
    double clamped = std::min(std::max(r, kYLo), kYHi);
    return kTop + (kYHi - clamped) / (kYHi - kYLo) * plot_h;
  };
  auto points_of = [&](double budget, bool theory) {
    std::string points;
    for (const ExperimentRow& row : rows) {
      if (row.budget != budget) continue;
      points += detail::format_g6(x_of(row.m)) + "," +
                detail::format_g6(y_of(theory ? row.r_theory : row.r_empirical)) +
                " ";
    }
    if (!points.empty()) points.pop_back();
    return points;
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"600\" viewBox=\"0 0 800 600\">\n";
  out << "  <rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  // Axes.
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (double tick = kYLo; tick <= kYHi + 1e-12; tick += 0.1) {
    const double y = y_of(tick);
    out << "  <line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\""
        << kLeft << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << kLeft - 10 << "\" y=\"" << y + 4
        << "\" font-size=\"12\" text-anchor=\"end\">" << detail::format_g6(tick)
        << "</text>\n";
  }
  out << "  <text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" font-size=\"14\" text-anchor=\"middle\">m (number of samples)"
      << "</text>\n";
  out << "  <text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">success rate</text>\n";
  out << "  <text x=\"" << kLeft << "\" y=\"" << kTop - 16
      << "\" font-size=\"13\">" << rows.front().mode
      << ": theory solid, simulation dashed</text>\n";
  // m-axis end labels.
  out << "  <text x=\"" << x_of(m_min) << "\" y=\"" << kTop + plot_h + 18
      << "\" font-size=\"12\" text-anchor=\"middle\">" << m_min << "</text>\n";
  out << "  <text x=\"" << x_of(m_max) << "\" y=\"" << kTop + plot_h + 18
      << "\" font-size=\"12\" text-anchor=\"middle\">" << m_max << "</text>\n";

  for (std::size_t i = 0; i < budgets.size(); ++i) {
    const std::string color = detail::svg_color(i, budgets.size());
    out << "  <polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"" << points_of(budgets[i], true)
        << "\"/>\n";
    out << "  <polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\" points=\""
        << points_of(budgets[i], false) << "\"/>\n";
    const double ly = kTop + 14.0 * i;
    out << "  <line x1=\"" << kLeft + plot_w - 150 << "\" y1=\"" << ly
        << "\" x2=\"" << kLeft + plot_w - 130 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
    out << "  <text x=\"" << kLeft + plot_w - 124 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\">budget " << detail::format_g6(budgets[i])
        << "</text>\n";
  }
  out << "</svg>\n";
}

inline void render_svg_file(const std::vector<ExperimentRow>& rows,
                            const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open SVG output: " + path);
  render_svg(rows, out);
  if (!out) throw std::runtime_error("failed writing SVG output: " + path);
}

}  // namespace linleak

#endif  // LINLEAK_EXPERIMENT_HPP
