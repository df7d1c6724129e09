#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "capmotion/geometry.hpp"

namespace capmotion {

// Closed-form logarithmic capacities used to calibrate the optimizers.
inline double reference_capacity_disk(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("reference_capacity_disk: radius <= 0");
  return radius;
}

inline double reference_capacity_segment(double length) {
  if (!(length > 0.0)) throw std::invalid_argument("reference_capacity_segment: length <= 0");
  return length / 4.0;
}

inline double reference_capacity_ellipse(double semi_a, double semi_b) {
  if (!(semi_a > 0.0) || !(semi_b > 0.0))
    throw std::invalid_argument("reference_capacity_ellipse: semi-axes must be positive");
  return 0.5 * (semi_a + semi_b);
}

struct GammaOracleResult {
  bool has_value = false;
  double value = 0.0;
  std::string shape;
  std::string provenance;
};

inline GammaOracleResult reference_gamma_disk(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("reference_gamma_disk: radius <= 0");
  GammaOracleResult r;
  r.has_value = true;
  r.value = radius;
  r.shape = "disk";
  r.provenance = "closed form: competitor z -> r/z attains r; matches the capacity bound";
  return r;
}

// Union of pairwise disjoint real intervals [a_i, b_i]: total length / 4.
inline GammaOracleResult reference_gamma_intervals(std::vector<std::pair<double, double>> intervals) {
  if (intervals.empty()) throw std::invalid_argument("reference_gamma_intervals: empty union");
  std::sort(intervals.begin(), intervals.end());
  double total = 0.0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    auto [a, b] = intervals[i];
    if (!(a < b)) throw std::invalid_argument("reference_gamma_intervals: empty interval");
    if (i > 0 && a < intervals[i - 1].second)
      throw std::invalid_argument("reference_gamma_intervals: intervals overlap");
    total += b - a;
  }
  GammaOracleResult r;
  r.has_value = true;
  r.value = total / 4.0;
  r.shape = "real-interval-union";
  r.provenance = "literature-derived: length/4 law for compact subsets of the real line";
  return r;
}

// Arc on the unit circle, stored as start angle and length in radians.
struct CircleArc {
  double start = 0.0;
  double length = 0.0;
};

// Whether a finite union of circle arcs has zero analytic capacity, which for
// circle subsets happens exactly when the total arc length is zero.
inline bool gamma_is_null_on_circle(const std::vector<CircleArc>& arcs) {
  double total = 0.0;
  for (const CircleArc& a : arcs) {
    if (a.length < 0.0) throw std::invalid_argument("gamma_is_null_on_circle: negative length");
    total += a.length;
  }
  return total == 0.0;
}

}  // namespace capmotion
