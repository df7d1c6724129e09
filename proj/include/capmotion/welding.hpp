#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "capmotion/curve.hpp"
#include "capmotion/errors.hpp"
#include "capmotion/harmonic.hpp"
#include "capmotion/julia.hpp"

namespace capmotion {

// Sampled circle homeomorphism pairing the exterior boundary parametrization
// of a quasicircle Julia set with the interior one. external_angles[k] = k/N;
// internal_angles[k] is the cumulative interior harmonic measure of the
// boundary arcs up to landing point k, normalized so phi_0 = 0.
struct WeldingTable {
  std::vector<double> external_angles;
  std::vector<double> internal_angles;
  std::vector<double> increments;      // interior measure of arc k
  std::vector<double> mc_error;        // per-cell binomial error estimate
  Complex c{0.0, 0.0};
  std::size_t n_walks = 0;
  std::size_t lost_walks = 0;
  double epsilon = 0.0;
  bool strictly_monotone = true;       // false when some cell drew no hits
  std::size_t zero_cells = 0;

  std::size_t size() const { return external_angles.size(); }

  void validate() const {
    std::size_t n = external_angles.size();
    if (n < 2 || internal_angles.size() != n || increments.size() != n)
      throw std::invalid_argument("WeldingTable: inconsistent sizes");
    double sum = 0.0;
    for (double d : increments) {
      if (d < 0.0) throw std::invalid_argument("WeldingTable: negative increment");
      sum += d;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("WeldingTable: increments must sum to 1");
    for (std::size_t k = 0; k + 1 < n; ++k)
      if (internal_angles[k + 1] < internal_angles[k])
        throw std::invalid_argument("WeldingTable: internal angles must be nondecreasing");
  }
};

// Builds the boundary-correspondence table of the Julia set of z^2 + c:
// vertices are the ray landing points at angles k/N, and the interior
// harmonic measure of each boundary arc (seen from 0) gives the internal
// angle increments. The normalization pins phi = 0 at theta = 0; rotational
// freedom beyond that is handled by the alignment step of
// ks_identity_distance.
inline WeldingTable welding_table(Complex c, std::size_t resolution, std::size_t n_walks,
                                  double epsilon = 0.0, std::uint64_t seed = 0,
                                  const BottcherParams& ray_params = {}, int workers = 0) {
  if (resolution < 4 || (resolution & (resolution - 1)) != 0)
    throw std::invalid_argument("welding_table: resolution must be a power of 2, >= 4");
  ray_params.require_parameter(c);

  JordanCurveApprox curve;
  curve.vertices.resize(resolution);
  for (std::size_t k = 0; k < resolution; ++k) {
    double theta = static_cast<double>(k) / static_cast<double>(resolution);
    curve.vertices[k] = external_ray_landing(c, theta, ray_params);
  }
  curve.validate();
  if (!curve_is_simple(curve))
    throw numerical_failure("welding_table: landing polygon self-intersects");
  if (!point_strictly_inside(Complex(0.0, 0.0), curve))
    throw numerical_failure("welding_table: basepoint 0 is not interior");

  if (epsilon <= 0.0) epsilon = 1e-3 * curve.diameter();
  BoundaryPartition cells = BoundaryPartition::equal_cells(resolution, resolution);
  MeasureVector mv = wos_harmonic_measure(curve, Complex(0.0, 0.0), cells, n_walks, epsilon,
                                          seed, workers);

  WeldingTable t;
  t.c = c;
  t.n_walks = n_walks;
  t.lost_walks = mv.lost_walks;
  t.epsilon = epsilon;
  t.external_angles.resize(resolution);
  t.internal_angles.resize(resolution);
  t.increments = mv.weights;
  t.mc_error.resize(resolution);
  double credited = static_cast<double>(n_walks - mv.lost_walks);
  double phi = 0.0;
  for (std::size_t k = 0; k < resolution; ++k) {
    t.external_angles[k] = static_cast<double>(k) / static_cast<double>(resolution);
    t.internal_angles[k] = phi;
    phi += mv.weights[k];
    double p = mv.weights[k];
    t.mc_error[k] = std::sqrt(std::max(p * (1.0 - p), 1.0 / credited) / credited);
    if (mv.hits[k] == 0) {
      t.strictly_monotone = false;
      ++t.zero_cells;
    }
  }
  t.validate();
  return t;
}

// Minimal fraction of cells whose increments cover mass alpha: sort the
// increments descending and count cells until the partial sum reaches alpha.
// Small values mean the interior measure concentrates on few exterior cells.
inline double concentration_statistic(const WeldingTable& t, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("concentration_statistic: alpha must lie in (0,1)");
  std::vector<double> inc = t.increments;
  std::sort(inc.begin(), inc.end(), std::greater<double>());
  double acc = 0.0;
  std::size_t used = 0;
  for (double d : inc) {
    acc += d;
    ++used;
    if (acc >= alpha) break;
  }
  return static_cast<double>(used) / static_cast<double>(inc.size());
}

// Sup distance of the table from the identity correspondence, after an
// optimal rotation of the internal angles. Deviations are assumed below a
// half turn, which holds for every table this library produces.
inline double ks_identity_distance(const WeldingTable& t) {
  std::size_t n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    double d = t.internal_angles[k] - t.external_angles[k];
    d -= std::round(d);  // lift to (-1/2, 1/2]
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return 0.5 * (hi - lo);
}

}  // namespace capmotion
