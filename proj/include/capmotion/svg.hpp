#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "capmotion/io.hpp"

namespace capmotion {

// Self-contained SVG line plot of y against x. No timestamps or other
// run-varying content: identical data yields identical bytes. The config
// hash is stamped in the footer so plots can be traced to their run.
inline std::string svg_line_plot(const std::vector<double>& xs, const std::vector<double>& ys,
                                 const std::string& x_label, const std::string& y_label,
                                 const std::string& config_hash) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("svg_line_plot: need matching nonempty series");

  const double W = 640.0, H = 420.0, L = 70.0, R = 20.0, T = 20.0, B = 60.0;
  double x_lo = *std::min_element(xs.begin(), xs.end());
  double x_hi = *std::max_element(xs.begin(), xs.end());
  double y_lo = *std::min_element(ys.begin(), ys.end());
  double y_hi = *std::max_element(ys.begin(), ys.end());
  if (x_hi == x_lo) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (y_hi == y_lo) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  auto px = [&](double x) { return L + (W - L - R) * (x - x_lo) / (x_hi - x_lo); };
  auto py = [&](double y) { return H - B - (H - T - B) * (y - y_lo) / (y_hi - y_lo); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    double fx = x_lo + (x_hi - x_lo) * k / 4.0;
    double fy = y_lo + (y_hi - y_lo) * k / 4.0;
    out << "<text x=\"" << px(fx) << "\" y=\"" << H - B + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
    out << "<text x=\"" << L - 6 << "\" y=\"" << py(fy) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << num(fy) << "</text>\n";
    out << "<line x1=\"" << px(fx) << "\" y1=\"" << H - B << "\" x2=\"" << px(fx) << "\" y2=\""
        << H - B + 4 << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << L - 4 << "\" y1=\"" << py(fy) << "\" x2=\"" << L << "\" y2=\""
        << py(fy) << "\" stroke=\"black\"/>\n";
  }

  if (xs.size() == 1) {
    out << "<circle cx=\"" << px(xs[0]) << "\" cy=\"" << py(ys[0])
        << "\" r=\"4\" fill=\"steelblue\"/>\n";
  } else {
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out << " ";
      out << px(xs[i]) << "," << py(ys[i]);
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
      out << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(ys[i])
          << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
  }

  out << "<text x=\"" << (L + W - R) / 2.0 << "\" y=\"" << H - B + 38
      << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << (T + H - B) / 2.0 << "\" font-size=\"13\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 16 " << (T + H - B) / 2.0 << ")\">" << y_label << "</text>\n";
  out << "<text x=\"" << W - R << "\" y=\"" << H - 8
      << "\" font-size=\"9\" text-anchor=\"end\" fill=\"gray\">config " << config_hash
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace capmotion
