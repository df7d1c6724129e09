#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "capmotion/geometry.hpp"

namespace capmotion {

// Closed polyline approximation of a Jordan curve. Vertices are cyclically
// ordered; the closing edge from back() to front() is implicit.
struct JordanCurveApprox {
  std::vector<Complex> vertices;

  std::size_t size() const { return vertices.size(); }
  Complex vertex(std::size_t k) const { return vertices[k % vertices.size()]; }

  void validate() const {
    if (vertices.size() < 3) throw std::invalid_argument("JordanCurveApprox: need >= 3 vertices");
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      if (!is_finite(vertices[k]))
        throw std::invalid_argument("JordanCurveApprox: non-finite vertex");
      if (vertices[k] == vertex(k + 1))
        throw std::invalid_argument("JordanCurveApprox: consecutive vertices coincide");
    }
  }

  double diameter() const {
    double lo_x = vertices[0].real(), hi_x = lo_x, lo_y = vertices[0].imag(), hi_y = lo_y;
    for (Complex v : vertices) {
      lo_x = std::min(lo_x, v.real());
      hi_x = std::max(hi_x, v.real());
      lo_y = std::min(lo_y, v.imag());
      hi_y = std::max(hi_y, v.imag());
    }
    return std::hypot(hi_x - lo_x, hi_y - lo_y);
  }
};

inline JordanCurveApprox curve_from_cloud(const PointCloud& cloud) {
  JordanCurveApprox c;
  c.vertices = cloud.points;
  c.validate();
  return c;
}

namespace detail {

inline double dist_point_segment(Complex z, Complex a, Complex b) {
  Complex u = b - a;
  double len2 = std::norm(u);
  if (len2 == 0.0) return std::abs(z - a);
  double t = ((z.real() - a.real()) * u.real() + (z.imag() - a.imag()) * u.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * u));
}

inline int orientation_sign(Complex a, Complex b, Complex c) {
  double v = (b.real() - a.real()) * (c.imag() - a.imag()) -
             (b.imag() - a.imag()) * (c.real() - a.real());
  return (v > 0.0) - (v < 0.0);
}

inline bool segments_properly_intersect(Complex a, Complex b, Complex c, Complex d) {
  int o1 = orientation_sign(a, b, c);
  int o2 = orientation_sign(a, b, d);
  int o3 = orientation_sign(c, d, a);
  int o4 = orientation_sign(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace detail

// Exact Euclidean distance from z to the closed polyline.
inline double dist_to_curve(Complex z, const JordanCurveApprox& curve) {
  if (!is_finite(z)) throw std::invalid_argument("dist_to_curve: non-finite point");
  const auto& v = curve.vertices;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < v.size(); ++k)
    best = std::min(best, detail::dist_point_segment(z, v[k], v[(k + 1) % v.size()]));
  return best;
}

// Winding number of the polyline around z (signed turn count). Meaningful
// only for z off the curve.
inline double winding_number(Complex z, const JordanCurveApprox& curve) {
  double total = 0.0;
  const auto& v = curve.vertices;
  for (std::size_t k = 0; k < v.size(); ++k) {
    Complex a = v[k] - z;
    Complex b = v[(k + 1) % v.size()] - z;
    total += std::arg(b / a);
  }
  return total / kTwoPi;
}

inline bool point_strictly_inside(Complex z, const JordanCurveApprox& curve) {
  return std::abs(std::abs(winding_number(z, curve)) - 1.0) < 0.25;
}

// Advisory O(n^2) self-intersection scan. Generated curves are simple by
// construction, so this is off the hot path and opt-in.
inline bool curve_is_simple(const JordanCurveApprox& curve) {
  const auto& v = curve.vertices;
  std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Skip adjacent edges (they share an endpoint).
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (detail::segments_properly_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

}  // namespace capmotion
