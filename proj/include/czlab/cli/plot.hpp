#pragma once

// Static SVG diagnostic: sigma_min(Psi(t) - I) / |Psi(t)| over [0, 1] at both
// extremizers, with a marker per detected crossing. Fixed-precision
// formatting keeps the bytes deterministic.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "czlab/cli/scenario_file.hpp"

namespace czlab::cli {

struct PlotSeries {
  std::string label;
  std::string color;
  std::vector<double> t, sigma;
  std::vector<Crossing> crossings;
};

template <HessianSource G>
PlotSeries plot_series(const G& S, const TheoremOptions& opt, std::string label, std::string color) {
  const auto path = integrate(S, 0.0, 1.0, opt.steps);
  PlotSeries s{std::move(label), std::move(color), {}, {}, {}};
  const auto& ts = path.times();
  const auto& ms = path.matrices();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Eigen::JacobiSVD<Matrix> svd(ms[i] - Matrix::Identity(ms[i].rows(), ms[i].cols()));
    s.t.push_back(ts[i]);
    s.sigma.push_back(svd.singularValues()(ms[i].rows() - 1) / spectral_norm(ms[i]));
  }
  s.crossings = find_crossings(path, Window{0.0, 1.0}, opt.crossing);
  return s;
}

namespace detail {
inline std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}
inline std::string xml_escape(const std::string& s) {
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
inline std::string f4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}
}  // namespace detail

inline std::string render_svg(const std::string& title, const std::vector<PlotSeries>& series) {
  using detail::f2;
  constexpr double W = 800, H = 420, left = 60, right = 20, top = 40, bottom = 50;
  const double pw = W - left - right, ph = H - top - bottom;
  double ymax = 0.0;
  for (const auto& s : series)
    for (double v : s.sigma) ymax = std::max(ymax, v);
  ymax = ymax <= 0 ? 1.0 : std::ceil(ymax * 4.0) / 4.0;
  auto X = [&](double t) { return left + t * pw; };
  auto Y = [&](double v) { return top + ph - std::min(v, ymax) / ymax * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"420\" viewBox=\"0 0 800 420\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"420\" fill=\"white\"/>\n";
  out += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" + detail::xml_escape(title) +
         "</text>\n";
  out += "<rect x=\"" + f2(left) + "\" y=\"" + f2(top) + "\" width=\"" + f2(pw) + "\" height=\"" + f2(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 10; ++k) {
    const double t = k / 10.0;
    out += "<text x=\"" + f2(X(t)) + "\" y=\"" + f2(top + ph + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + detail::f4(t).substr(0, 3) +
           "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double v = ymax * k / 4.0;
    out += "<text x=\"" + f2(left - 6) + "\" y=\"" + f2(Y(v) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + f2(v) + "</text>\n";
  }
  out += "<text x=\"" + f2(left + pw / 2) + "\" y=\"" + f2(H - 10) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">t</text>\n";
  out += "<text x=\"16\" y=\"" + f2(top + ph / 2) +
         "\" transform=\"rotate(-90 16 " + f2(top + ph / 2) +
         ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">sigma_min(Psi(t) - I) / |Psi(t)|</text>\n";

  int legend = 0;
  for (const auto& s : series) {
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      if (i) out += ' ';
      out += f2(X(s.t[i])) + "," + f2(Y(s.sigma[i]));
    }
    out += "\"/>\n";
    for (const auto& c : s.crossings) {
      out += "<line class=\"crossing\" x1=\"" + f2(X(c.time)) + "\" y1=\"" + f2(top) + "\" x2=\"" + f2(X(c.time)) +
             "\" y2=\"" + f2(top + ph) + "\" stroke=\"" + s.color + "\" stroke-dasharray=\"4 3\"/>\n";
      out += "<text x=\"" + f2(X(c.time) + 3) + "\" y=\"" + f2(top + 14 + 14 * legend) +
             "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + s.color + "\">t=" + detail::f4(c.time) +
             " m=" + std::to_string(c.multiplicity) + "</text>\n";
    }
    out += "<text x=\"" + f2(left + pw - 150) + "\" y=\"" + f2(top + ph - 12 - 16 * legend) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + s.color + "\">" + s.label + "</text>\n";
    ++legend;
  }
  out += "</svg>\n";
  return out;
}

inline std::string plot_scenario(const Scenario& scenario, const TheoremOptions& opt) {
  std::vector<PlotSeries> series;
  series.push_back(plot_series(scenario.s_max, opt, "x_max", "#1f5fbf"));
  series.push_back(plot_series(scenario.s_min.negated(), opt, "x_min", "#c0392b"));
  return render_svg(scenario.name + " (" + scenario.model + ")", series);
}

}  // namespace czlab::cli
