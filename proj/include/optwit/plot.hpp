#pragma once

// Static SVG line plots of sweep CSV files. Output bytes depend only on the
// input table and options.

#include "optwit/coordinate_io.hpp"
#include "optwit/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace optwit {

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::invalid_argument("no column named '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
  }
  std::vector<double> column(const std::string& name) const {
    const std::size_t k = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[k]);
    return out;
  }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

// Throws FormatError for anything that is not a header starting with `t`
// followed by at least one row of finite numbers of matching width.
inline SweepTable parse_sweep_csv(std::istream& is) {
  SweepTable table;
  std::string line;
  if (!std::getline(is, line) || line.empty()) throw FormatError("sweep CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.columns = split_csv_line(line);
  if (table.columns.size() < 2 || table.columns.front() != "t") throw FormatError("sweep CSV: header must start with 't'");
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != table.columns.size())
      throw FormatError("sweep CSV: line " + std::to_string(lineno) + " has " + std::to_string(fields.size()) +
                        " fields, expected " + std::to_string(table.columns.size()));
    std::vector<double> row;
    for (const auto& f : fields) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(f, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != f.size() || !std::isfinite(v))
        throw FormatError("sweep CSV: line " + std::to_string(lineno) + " has a non-numeric field '" + f + "'");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw FormatError("sweep CSV: no data rows");
  return table;
}

inline SweepTable to_table(const std::vector<SweepRow>& rows) {
  SweepTable t;
  t.columns = {"t", "min_eig_rho", "min_eig_rho_gamma", "witness_value", "witness_formula"};
  for (const auto& r : rows)
    t.rows.push_back({r.t, r.min_eig_rho, r.min_eig_rho_gamma, r.witness_value, r.witness_formula});
  return t;
}

struct PlotOptions {
  std::vector<std::string> columns;
  bool normalize = false;  // divide each column by its max |value|
};

// Data-to-pixel mapping of the plot area.
struct PlotFrame {
  static constexpr double kWidth = 800, kHeight = 500;
  static constexpr double kLeft = 80, kRight = 200, kTop = 40, kBottom = 60;
  double t_min, t_max, v_min, v_max;

  double x_of(double t) const { return kLeft + (t - t_min) / (t_max - t_min) * (kWidth - kLeft - kRight); }
  double y_of(double v) const { return kTop + (v_max - v) / (v_max - v_min) * (kHeight - kTop - kBottom); }
};

struct PlotSeries {
  std::string name;
  std::vector<double> t;
  std::vector<double> values;
};

inline std::vector<PlotSeries> plot_series(const SweepTable& table, const PlotOptions& opts) {
  if (opts.columns.empty()) throw std::invalid_argument("plot: no columns selected");
  const std::vector<double> t = table.column("t");
  std::vector<PlotSeries> series;
  for (const auto& name : opts.columns) {
    std::vector<double> v = table.column(name);
    if (opts.normalize) {
      double peak = 0.0;
      for (double x : v) peak = std::max(peak, std::abs(x));
      if (peak > 0.0)
        for (double& x : v) x /= peak;
    }
    series.push_back({name, t, std::move(v)});
  }
  return series;
}

inline PlotFrame plot_frame(const std::vector<PlotSeries>& series) {
  double t_lo = series.front().t.front(), t_hi = t_lo;
  double v_lo = 0.0, v_hi = 0.0;  // zero is always in view
  for (const auto& s : series) {
    for (double t : s.t) {
      t_lo = std::min(t_lo, t);
      t_hi = std::max(t_hi, t);
    }
    for (double v : s.values) {
      v_lo = std::min(v_lo, v);
      v_hi = std::max(v_hi, v);
    }
  }
  if (t_hi == t_lo) {
    t_lo -= 0.5;
    t_hi += 0.5;
  }
  if (v_hi == v_lo) v_hi = v_lo + 1.0;
  const double pad = 0.05 * (v_hi - v_lo);
  return {t_lo, t_hi, v_lo - pad, v_hi + pad};
}

namespace detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline std::string render_svg(const SweepTable& table, const PlotOptions& opts) {
  static constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                         "#ff7f0e", "#9467bd", "#8c564b"};
  const auto series = plot_series(table, opts);
  const PlotFrame f = plot_frame(series);
  const double x0 = PlotFrame::kLeft, x1 = PlotFrame::kWidth - PlotFrame::kRight;
  const double y0 = PlotFrame::kTop, y1 = PlotFrame::kHeight - PlotFrame::kBottom;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << PlotFrame::kWidth << "\" height=\""
     << PlotFrame::kHeight << "\" viewBox=\"0 0 " << PlotFrame::kWidth << ' ' << PlotFrame::kHeight << "\">\n";
  os << "<metadata>normalize=" << (opts.normalize ? "true" : "false") << ";columns=";
  for (std::size_t k = 0; k < opts.columns.size(); ++k) os << (k ? "," : "") << detail::xml_escape(opts.columns[k]);
  os << "</metadata>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << PlotFrame::kWidth << "\" height=\"" << PlotFrame::kHeight
     << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << (x1 - x0) << "\" height=\"" << (y1 - y0)
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  // zero line
  const std::string yz = detail::fmt("%.3f", f.y_of(0.0));
  os << "<line x1=\"" << x0 << "\" y1=\"" << yz << "\" x2=\"" << x1 << "\" y2=\"" << yz
     << "\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";

  constexpr int kTicks = 5;
  for (int k = 0; k <= kTicks; ++k) {
    const double t = f.t_min + (f.t_max - f.t_min) * k / kTicks;
    const std::string x = detail::fmt("%.3f", f.x_of(t));
    os << "<line x1=\"" << x << "\" y1=\"" << y1 << "\" x2=\"" << x << "\" y2=\"" << (y1 + 5)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << (y1 + 20) << "\" font-size=\"12\" text-anchor=\"middle\">"
       << detail::fmt("%.4g", t) << "</text>\n";
    const double v = f.v_min + (f.v_max - f.v_min) * k / kTicks;
    const std::string y = detail::fmt("%.3f", f.y_of(v));
    os << "<line x1=\"" << (x0 - 5) << "\" y1=\"" << y << "\" x2=\"" << x0 << "\" y2=\"" << y
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (x0 - 8) << "\" y=\"" << y << "\" font-size=\"12\" text-anchor=\"end\">"
       << detail::fmt("%.3g", v) << "</text>\n";
  }
  os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << (PlotFrame::kHeight - 15)
     << "\" font-size=\"14\" text-anchor=\"middle\">t</text>\n";
  os << "<text x=\"20\" y=\"" << (y0 + y1) / 2 << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << (y0 + y1) / 2 << ")\">" << (opts.normalize ? "value / max |value|" : "value") << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % kColors.size()];
    os << "<polyline data-column=\"" << detail::xml_escape(series[s].name) << "\" fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < series[s].t.size(); ++k)
      os << (k ? " " : "") << detail::fmt("%.3f", f.x_of(series[s].t[k])) << ','
         << detail::fmt("%.3f", f.y_of(series[s].values[k]));
    os << "\"/>\n";
    const double ly = y0 + 20.0 + 22.0 * static_cast<double>(s);
    os << "<line x1=\"" << (x1 + 15) << "\" y1=\"" << ly << "\" x2=\"" << (x1 + 45) << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << (x1 + 52) << "\" y=\"" << (ly + 4) << "\" font-size=\"12\">"
       << detail::xml_escape(series[s].name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace optwit
