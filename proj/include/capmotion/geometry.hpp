#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace capmotion {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// A point on the Riemann sphere: either a finite plane point or the point at
// infinity. The infinity marker is never stored in a PointCloud; it exists so
// motions can state "infinity maps to infinity" as an evaluatable fact.
struct SpherePoint {
  Complex value{0.0, 0.0};
  bool at_infinity = false;

  SpherePoint() = default;
  SpherePoint(Complex z) : value(z) {}  // NOLINT: implicit by design
  static SpherePoint infinity() {
    SpherePoint p;
    p.at_infinity = true;
    p.value = Complex(std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity());
    return p;
  }

  bool operator==(const SpherePoint& o) const {
    if (at_infinity || o.at_infinity) return at_infinity == o.at_infinity;
    return value == o.value;
  }
};

// Finite discretization of a compact plane set, with provenance metadata.
// Duplicate points are permitted; downstream optimizers must tolerate them.
struct PointCloud {
  std::vector<Complex> points;
  std::string label;
  std::map<std::string, std::string> generator_params;

  std::size_t size() const { return points.size(); }

  void validate() const {
    if (points.empty()) throw std::invalid_argument("PointCloud: empty");
    for (const Complex& p : points)
      if (!is_finite(p)) throw std::invalid_argument("PointCloud: non-finite point");
  }
};

namespace detail {
inline std::string format_double_key(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace detail

// n points equally spaced on a circle, starting at angle 0.
inline PointCloud gen_circle(std::size_t n, double radius, Complex center = {0.0, 0.0}) {
  if (n < 3) throw std::invalid_argument("gen_circle: need n >= 3");
  if (!(radius > 0.0)) throw std::invalid_argument("gen_circle: radius must be positive");
  PointCloud out;
  out.points.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    out.points.emplace_back(center + radius * Complex(std::cos(t), std::sin(t)));
  }
  out.label = "circle";
  out.generator_params = {{"n", std::to_string(n)},
                          {"radius", detail::format_double_key(radius)},
                          {"center_re", detail::format_double_key(center.real())},
                          {"center_im", detail::format_double_key(center.imag())}};
  return out;
}

// n points equally spaced from a to b inclusive.
inline PointCloud gen_segment(std::size_t n, Complex a, Complex b) {
  if (n < 2) throw std::invalid_argument("gen_segment: need n >= 2");
  if (a == b) throw std::invalid_argument("gen_segment: endpoints coincide");
  PointCloud out;
  out.points.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double t = static_cast<double>(k) / static_cast<double>(n - 1);
    out.points.emplace_back(a + t * (b - a));
  }
  out.label = "segment";
  out.generator_params = {{"n", std::to_string(n)},
                          {"a_re", detail::format_double_key(a.real())},
                          {"a_im", detail::format_double_key(a.imag())},
                          {"b_re", detail::format_double_key(b.real())},
                          {"b_im", detail::format_double_key(b.imag())}};
  return out;
}

// Corner-square construction in the unit square: each generation replaces a
// square of side s by the four corner squares of side s/4. Level k therefore
// holds 4^k squares of side 4^-k. Each final square is sampled on a g x g
// grid with g = ceil(sqrt(points_per_square)) (g = 1 places the center).
inline PointCloud gen_cantor_quarter_square(std::size_t level, std::size_t points_per_square = 4) {
  if (points_per_square == 0)
    throw std::invalid_argument("gen_cantor_quarter_square: points_per_square must be >= 1");
  std::vector<Complex> corners{{0.0, 0.0}};  // lower-left corners
  double side = 1.0;
  for (std::size_t l = 0; l < level; ++l) {
    double sub = side / 4.0;
    std::vector<Complex> next;
    next.reserve(corners.size() * 4);
    for (Complex c : corners) {
      double off = side - sub;  // opposite corner offset
      next.emplace_back(c);
      next.emplace_back(c + Complex(off, 0.0));
      next.emplace_back(c + Complex(0.0, off));
      next.emplace_back(c + Complex(off, off));
    }
    corners = std::move(next);
    side = sub;
  }
  std::size_t g = 1;
  while (g * g < points_per_square) ++g;
  PointCloud out;
  out.points.reserve(corners.size() * g * g);
  for (Complex c : corners) {
    if (g == 1) {
      out.points.emplace_back(c + Complex(side / 2.0, side / 2.0));
      continue;
    }
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j)
        out.points.emplace_back(c + Complex(side * static_cast<double>(i) / static_cast<double>(g - 1),
                                            side * static_cast<double>(j) / static_cast<double>(g - 1)));
  }
  out.label = "cantor_quarter_square";
  out.generator_params = {{"level", std::to_string(level)},
                          {"points_per_square", std::to_string(points_per_square)},
                          {"grid_per_square", std::to_string(g * g)}};
  return out;
}

// Deformation-parameter sample set inside the open unit disk. Always contains 0.
struct LambdaGrid {
  std::vector<Complex> samples;
  std::string description;

  void validate() const {
    if (samples.empty()) throw std::invalid_argument("LambdaGrid: empty");
    bool has_zero = false;
    for (Complex s : samples) {
      if (std::abs(s) >= 1.0) throw std::invalid_argument("LambdaGrid: sample outside unit disk");
      if (s == Complex(0.0, 0.0)) has_zero = true;
    }
    if (!has_zero) throw std::invalid_argument("LambdaGrid: must contain 0");
  }
};

// Equally spaced real parameters from a to b. Inserts 0 when the spacing
// does not land on it exactly.
inline LambdaGrid lambda_grid_real(double a, double b, std::size_t count) {
  if (count < 2 || !(a < b) || a <= -1.0 || b >= 1.0)
    throw std::invalid_argument("lambda_grid_real: need -1 < a < b < 1 and count >= 2");
  LambdaGrid g;
  bool has_zero = false;
  for (std::size_t k = 0; k < count; ++k) {
    double t = a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1);
    if (std::abs(t) < 1e-15) t = 0.0;
    if (t == 0.0) has_zero = true;
    g.samples.emplace_back(t, 0.0);
  }
  if (!has_zero) g.samples.emplace_back(0.0, 0.0);
  g.description = "real:" + detail::format_double_key(a) + ":" + detail::format_double_key(b) +
                  ":" + std::to_string(count);
  g.validate();
  return g;
}

// Center plus concentric rings: each ring carries points_per_ring equally
// spaced angles. Rings are listed exactly, so circle-mean checks can address
// them without interpolation.
inline LambdaGrid lambda_grid_polar(const std::vector<double>& radii, std::size_t points_per_ring) {
  if (points_per_ring < 4) throw std::invalid_argument("lambda_grid_polar: need >= 4 points per ring");
  LambdaGrid g;
  g.samples.emplace_back(0.0, 0.0);
  std::string desc = "polar:";
  for (double r : radii) {
    if (!(r > 0.0) || r >= 1.0) throw std::invalid_argument("lambda_grid_polar: radius outside (0,1)");
    for (std::size_t k = 0; k < points_per_ring; ++k) {
      double t = kTwoPi * static_cast<double>(k) / static_cast<double>(points_per_ring);
      g.samples.emplace_back(r * std::cos(t), r * std::sin(t));
    }
    desc += detail::format_double_key(r) + ",";
  }
  g.description = desc + "x" + std::to_string(points_per_ring);
  g.validate();
  return g;
}

}  // namespace capmotion
