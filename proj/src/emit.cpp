#include "superres/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace superres::scenario {

namespace {

constexpr std::array<const char *, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                  "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

struct Series {
  std::vector<double> key;
  std::string label;
  std::vector<std::pair<double, double>> points; // (ell, d_min)
  std::vector<std::pair<double, double>> rayleigh;
};

class LogAxis {
public:
  LogAxis(double lo, double hi, double pixel_lo, double pixel_hi)
      : decade_lo_(std::floor(std::log10(lo))), decade_hi_(std::ceil(std::log10(hi))),
        pixel_lo_(pixel_lo), pixel_hi_(pixel_hi) {
    if (decade_hi_ <= decade_lo_) {
      decade_hi_ = decade_lo_ + 1.0;
    }
  }
  double map(double v) const {
    const double t = (std::log10(v) - decade_lo_) / (decade_hi_ - decade_lo_);
    return pixel_lo_ + t * (pixel_hi_ - pixel_lo_);
  }
  int first_decade() const { return static_cast<int>(decade_lo_); }
  int last_decade() const { return static_cast<int>(decade_hi_); }

private:
  double decade_lo_;
  double decade_hi_;
  double pixel_lo_;
  double pixel_hi_;
};

bool plottable(double v) { return std::isfinite(v) && v > 0.0; }

std::string fixed2(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << v;
  return s.str();
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
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

std::vector<Series> group_series(const SweepTable &table) {
  std::vector<std::size_t> extra_columns;
  for (std::size_t i = 0; i < table.axes.size(); ++i) {
    if (table.axes[i] != "ell") {
      extra_columns.push_back(i);
    }
  }
  std::vector<Series> series;
  for (const auto &row : table.rows) {
    std::vector<double> key;
    for (auto c : extra_columns) {
      key.push_back(row.axis_values[c]);
    }
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series &s) { return s.key == key; });
    if (it == series.end()) {
      Series s;
      s.key = key;
      for (std::size_t k = 0; k < extra_columns.size(); ++k) {
        if (k != 0) s.label += ", ";
        s.label += table.axes[extra_columns[k]] + "=" + format_double(key[k]);
      }
      if (s.label.empty()) s.label = "d_min";
      series.push_back(std::move(s));
      it = std::prev(series.end());
    }
    if (plottable(row.ell) && plottable(row.d_min)) {
      it->points.emplace_back(row.ell, row.d_min);
    }
    if (plottable(row.ell) && plottable(row.d_rayleigh)) {
      it->rayleigh.emplace_back(row.ell, row.d_rayleigh);
    }
  }
  for (auto &s : series) {
    std::sort(s.points.begin(), s.points.end());
    std::sort(s.rayleigh.begin(), s.rayleigh.end());
  }
  return series;
}

} // namespace

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

void write_csv(const SweepTable &table, std::ostream &out) {
  if (table.rows.empty()) {
    throw DomainError("write_csv: empty table");
  }
  std::vector<std::size_t> extra_columns;
  out << "ell,d_min,d_rayleigh,resolved,margin";
  for (std::size_t i = 0; i < table.axes.size(); ++i) {
    if (table.axes[i] != "ell") {
      extra_columns.push_back(i);
      out << ',' << table.axes[i];
    }
  }
  out << '\n';
  for (const auto &row : table.rows) {
    out << format_double(row.ell) << ',' << format_double(row.d_min) << ','
        << format_double(row.d_rayleigh) << ',' << (row.resolved ? "true" : "false") << ','
        << format_double(row.margin);
    for (auto c : extra_columns) {
      out << ',' << format_double(row.axis_values[c]);
    }
    out << '\n';
  }
}

void emit_csv(const SweepTable &table, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write CSV to '" + path.string() + "'");
  }
  write_csv(table, out);
  if (!out) {
    throw IoError("write failed for '" + path.string() + "'");
  }
}

void write_plot(const SweepTable &table, const PlotSpec &spec, std::ostream &out) {
  if (table.rows.empty()) {
    throw DomainError("write_plot: empty table");
  }
  if (std::find(table.axes.begin(), table.axes.end(), "ell") == table.axes.end()) {
    throw DomainError("write_plot: d_min-vs-ell plot needs an ell sweep axis");
  }
  const auto series = group_series(table);

  double x_lo = HUGE_VAL, x_hi = -HUGE_VAL, y_lo = HUGE_VAL, y_hi = -HUGE_VAL;
  for (const auto &s : series) {
    for (const auto &pts : {s.points, s.rayleigh}) {
      for (const auto &[x, y] : pts) {
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
      }
    }
  }
  if (!(x_lo < x_hi)) {
    throw DomainError("write_plot: need at least two distinct finite ell values");
  }

  const double left = 80.0, right = spec.width - 220.0, top = 40.0, bottom = spec.height - 50.0;
  const LogAxis xs(x_lo, x_hi, left, right);
  const LogAxis ys(y_lo, y_hi, bottom, top);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << fixed2(0.5 * (left + right)) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << xml_escape(spec.title) << "</text>\n";

  // Super-resolution region: everything below the Rayleigh line.
  const auto &reference = series.front().rayleigh;
  if (!reference.empty()) {
    out << "<polygon class=\"region\" fill=\"#ffe680\" fill-opacity=\"0.6\" stroke=\"none\" points=\"";
    out << fixed2(xs.map(reference.front().first)) << ',' << fixed2(bottom);
    for (const auto &[x, y] : reference) {
      out << ' ' << fixed2(xs.map(x)) << ',' << fixed2(ys.map(y));
    }
    out << ' ' << fixed2(xs.map(reference.back().first)) << ',' << fixed2(bottom) << "\"/>\n";
  }

  // Decade grid and labels.
  out << "<g font-family=\"sans-serif\" font-size=\"11\" stroke=\"#cccccc\">\n";
  for (int e = xs.first_decade(); e <= xs.last_decade(); ++e) {
    const double px = xs.map(std::pow(10.0, e));
    out << "<line x1=\"" << fixed2(px) << "\" y1=\"" << fixed2(top) << "\" x2=\"" << fixed2(px)
        << "\" y2=\"" << fixed2(bottom) << "\"/>";
    out << "<text stroke=\"none\" x=\"" << fixed2(px) << "\" y=\"" << fixed2(bottom + 16)
        << "\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  for (int e = ys.first_decade(); e <= ys.last_decade(); ++e) {
    const double py = ys.map(std::pow(10.0, e));
    out << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(py) << "\" x2=\"" << fixed2(right)
        << "\" y2=\"" << fixed2(py) << "\"/>";
    out << "<text stroke=\"none\" x=\"" << fixed2(left - 6) << "\" y=\"" << fixed2(py + 4)
        << "\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  out << "</g>\n";
  out << "<text x=\"" << fixed2(0.5 * (left + right)) << "\" y=\"" << fixed2(bottom + 38)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">ell (m)</text>\n";
  out << "<text x=\"18\" y=\"" << fixed2(0.5 * (top + bottom)) << "\" transform=\"rotate(-90 18 "
      << fixed2(0.5 * (top + bottom))
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">separation (m)</text>\n";

  auto polyline = [&](const std::vector<std::pair<double, double>> &pts, const char *cls,
                      const char *colour, const char *dash) {
    out << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << colour
        << "\" stroke-width=\"1.6\"";
    if (dash != nullptr) {
      out << " stroke-dasharray=\"" << dash << '"';
    }
    out << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out << (i == 0 ? "" : " ") << fixed2(xs.map(pts[i].first)) << ','
          << fixed2(ys.map(pts[i].second));
    }
    out << "\"/>\n";
  };

  polyline(reference, "reference", "black", "6,4");
  double legend_y = top + 10.0;
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<text x=\"" << fixed2(right + 34) << "\" y=\"" << fixed2(legend_y + 4)
      << "\">d_rayleigh</text>\n";
  out << "<line x1=\"" << fixed2(right + 10) << "\" y1=\"" << fixed2(legend_y) << "\" x2=\""
      << fixed2(right + 30) << "\" y2=\"" << fixed2(legend_y)
      << "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";
  out << "</g>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char *colour = kPalette[i % kPalette.size()];
    polyline(series[i].points, "series", colour, nullptr);
    legend_y += 18.0;
    out << "<line x1=\"" << fixed2(right + 10) << "\" y1=\"" << fixed2(legend_y) << "\" x2=\""
        << fixed2(right + 30) << "\" y2=\"" << fixed2(legend_y) << "\" stroke=\"" << colour
        << "\" stroke-width=\"1.6\"/>";
    out << "<text x=\"" << fixed2(right + 34) << "\" y=\"" << fixed2(legend_y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(series[i].label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

void emit_plot(const SweepTable &table, const PlotSpec &spec, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write SVG to '" + path.string() + "'");
  }
  write_plot(table, spec, out);
  if (!out) {
    throw IoError("write failed for '" + path.string() + "'");
  }
}

} // namespace superres::scenario
