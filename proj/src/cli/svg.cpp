#include "fadingqkd/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace fqkd::cli {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 230.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kColors[] = {"#1f77b4", "#2ca02c", "#d62728", "#ff7f0e", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr const char* kDashes[] = {"", "6,4", "2,3", "8,3,2,3"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Roughly five round-numbered ticks covering [lo, hi].
std::vector<double> linear_ticks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return ticks;
}

double quantity(const PointRecord& r, const std::string& name) {
  if (name == "holevo") return r.skr.holevo;
  if (name == "mutual_info") return r.skr.mutual_info;
  return r.skr.rate;
}

}  // namespace

std::vector<Series> series_from_rows(const std::vector<PointRecord>& rows, XAxis x_axis,
                                     const std::vector<std::string>& quantities) {
  std::vector<Series> out;
  std::map<std::string, std::size_t> index;
  for (const std::string& q : quantities) {
    for (const PointRecord& r : rows) {
      if (!r.error.empty()) continue;
      std::string label(to_string(r.approach));
      if (quantities.size() > 1) label += " " + q;
      label += " eps=" + num(r.eps);
      if (r.approach != Approach::fixed) label += " dT=" + num(r.delta_t);
      double x = 0.0;
      switch (x_axis) {
        case XAxis::t_min: x = r.t_min; break;
        case XAxis::t_mean: x = r.t_mean(); break;
        case XAxis::attenuation_db: x = r.t_min > 0.0 ? attenuation_db(r.t_min) : INFINITY; break;
        case XAxis::variance: x = r.v; break;
      }
      if (!std::isfinite(x)) continue;
      if (x_axis == XAxis::variance) {
        label += " t_min=" + num(r.t_min);
      } else {
        label += r.v_opt ? std::string(" V=opt") : " V=" + num(r.v);
      }
      const auto [it, fresh] = index.emplace(label, out.size());
      if (fresh) out.push_back({label, {}, {}});
      out[it->second].x.push_back(x);
      out[it->second].y.push_back(quantity(r, q));
    }
  }
  return out;
}

void write_svg(std::ostream& out, const std::vector<Series>& series, const PlotOptions& options) {
  // Clamp, then collect the data window.
  std::vector<Series> data = series;
  double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
  for (Series& s : data) {
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      s.y[i] = std::max(0.0, s.y[i]);
      if (options.log_y && s.y[i] <= 0.0) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0, x_hi = 1.0, y_lo = options.log_y ? 1e-3 : 0.0, y_hi = 1.0;
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (options.log_y) {
    y_lo = std::pow(10.0, std::floor(std::log10(y_lo)));
    y_hi = std::pow(10.0, std::ceil(std::log10(y_hi)));
    if (y_hi == y_lo) y_hi = y_lo * 10.0;
  } else {
    y_lo = 0.0;
    if (y_hi <= 0.0) y_hi = 1.0;
    y_hi *= 1.05;
  }

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  const auto py = [&](double y) {
    const double f = options.log_y ? (std::log10(y) - std::log10(y_lo)) / (std::log10(y_hi) - std::log10(y_lo))
                                   : (y - y_lo) / (y_hi - y_lo);
    return kTop + (1.0 - f) * ph;
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << escape_xml(options.title) << "</text>\n";
  }
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : linear_ticks(x_lo, x_hi)) {
    out << "<line x1=\"" << num(px(t)) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(px(t)) << "\" y2=\""
        << kTop + ph + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num(px(t)) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << num(t)
        << "</text>\n";
  }
  std::vector<double> y_ticks;
  if (options.log_y) {
    for (double t = y_lo; t <= y_hi * (1 + 1e-9); t *= 10.0) y_ticks.push_back(t);
  } else {
    y_ticks = linear_ticks(y_lo, y_hi);
  }
  for (double t : y_ticks) {
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(py(t)) << "\" x2=\"" << kLeft << "\" y2=\""
        << num(py(t)) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">" << num(t)
        << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
      << escape_xml(options.x_label) << "</text>\n"
      << "<text transform=\"translate(20," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape_xml(options.y_label) << "</text>\n";

  for (std::size_t k = 0; k < data.size(); ++k) {
    const Series& s = data[k];
    const std::string style = std::string("fill=\"none\" stroke=\"") + kColors[k % std::size(kColors)] +
                              "\" stroke-width=\"1.6\"" +
                              (*kDashes[(k / std::size(kColors)) % std::size(kDashes)]
                                   ? std::string(" stroke-dasharray=\"") +
                                         kDashes[(k / std::size(kColors)) % std::size(kDashes)] + "\""
                                   : std::string());
    // Log plots break the line where a value was dropped.
    std::string points;
    const auto flush = [&] {
      if (!points.empty()) out << "<polyline " << style << " points=\"" << points << "\"/>\n";
      points.clear();
    };
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (options.log_y && s.y[i] <= 0.0) {
        flush();
        continue;
      }
      points += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
    }
    flush();

    const double ly = kTop + 10 + 16.0 * static_cast<double>(k);
    const double lx = kLeft + pw + 12;
    out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly << "\" " << style
        << "/>\n"
        << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\" font-size=\"10\">" << escape_xml(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace fqkd::cli
