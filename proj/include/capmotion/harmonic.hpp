#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "capmotion/curve.hpp"
#include "capmotion/errors.hpp"
#include "capmotion/geometry.hpp"
#include "capmotion/parallel.hpp"
#include "capmotion/rng.hpp"

namespace capmotion {

// Partition of a closed polyline into contiguous cells of whole segments.
// cell_start[k] is the index of the first segment of cell k; cell k runs up
// to (cyclically) cell_start[k+1] - 1. Segment j joins vertex j to j+1.
struct BoundaryPartition {
  std::vector<std::size_t> cell_start;

  static BoundaryPartition equal_cells(std::size_t n_segments, std::size_t n_cells) {
    if (n_cells == 0 || n_cells > n_segments)
      throw std::invalid_argument("BoundaryPartition: need 1 <= cells <= segments");
    BoundaryPartition p;
    p.cell_start.reserve(n_cells);
    for (std::size_t k = 0; k < n_cells; ++k) p.cell_start.push_back(k * n_segments / n_cells);
    return p;
  }

  std::size_t cells() const { return cell_start.size(); }

  // Cell containing segment j (cell_start must be sorted ascending).
  std::size_t cell_of_segment(std::size_t j) const {
    auto it = std::upper_bound(cell_start.begin(), cell_start.end(), j);
    if (it == cell_start.begin()) return cell_start.size() - 1;  // wrap before first start
    return static_cast<std::size_t>(it - cell_start.begin()) - 1;
  }

  void validate(std::size_t n_segments) const {
    if (cell_start.empty()) throw std::invalid_argument("BoundaryPartition: empty");
    for (std::size_t k = 0; k < cell_start.size(); ++k) {
      if (cell_start[k] >= n_segments)
        throw std::invalid_argument("BoundaryPartition: start index out of range");
      if (k > 0 && cell_start[k] <= cell_start[k - 1])
        throw std::invalid_argument("BoundaryPartition: starts must increase");
    }
  }
};

// Sampled (or exact) probability vector over boundary cells.
struct MeasureVector {
  std::vector<double> weights;
  std::vector<std::uint64_t> hits;
  std::size_t n_walks = 0;
  std::size_t lost_walks = 0;  // walks that hit the step cap; mass renormalized
  double epsilon = 0.0;
  bool exact = false;

  void validate() const {
    if (weights.empty()) throw std::invalid_argument("MeasureVector: empty");
    double sum = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("MeasureVector: negative weight");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("MeasureVector: weights must sum to 1");
    if (!exact) {
      std::uint64_t total = 0;
      for (std::uint64_t h : hits) total += h;
      if (total + lost_walks != n_walks)
        throw std::invalid_argument("MeasureVector: hit counts inconsistent with walk count");
    }
  }
};

namespace detail {

// Distance to the polyline plus the index of the nearest segment
// (lowest index wins ties, keeping crediting deterministic).
inline std::pair<double, std::size_t> nearest_segment(Complex z, const JordanCurveApprox& curve) {
  const auto& v = curve.vertices;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_j = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    double d = dist_point_segment(z, v[j], v[(j + 1) % v.size()]);
    if (d < best) {
      best = d;
      best_j = j;
    }
  }
  return {best, best_j};
}

}  // namespace detail

// Interior harmonic measure of the boundary cells seen from z0, sampled by
// walk-on-spheres: each walk repeatedly jumps to a uniform point of the
// largest centered circle not crossing the boundary, and is absorbed once
// within epsilon of it, crediting the nearest cell. Hit counts are integers
// accumulated per walk index, so results are identical for any worker count.
inline MeasureVector wos_harmonic_measure(const JordanCurveApprox& curve, Complex z0,
                                          const BoundaryPartition& partition,
                                          std::size_t n_walks, double epsilon,
                                          std::uint64_t seed, int workers = 0,
                                          std::size_t max_steps = 20000) {
  curve.validate();
  std::size_t n_segments = curve.size();
  partition.validate(n_segments);
  if (!(epsilon > 0.0)) throw std::invalid_argument("wos_harmonic_measure: epsilon must be positive");
  if (n_walks == 0) throw std::invalid_argument("wos_harmonic_measure: need walks");
  if (!point_strictly_inside(z0, curve))
    throw std::invalid_argument("wos_harmonic_measure: basepoint not inside the curve");
  if (dist_to_curve(z0, curve) <= epsilon)
    throw std::invalid_argument("wos_harmonic_measure: basepoint within epsilon of the curve");

  const std::size_t n_cells = partition.cells();
  constexpr std::uint32_t kLost = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> walk_cell(n_walks, kLost);

  parallel_for(n_walks, workers, [&](std::size_t w) {
    SeededStream rng(seed, w);
    Complex z = z0;
    for (std::size_t step = 0; step < max_steps; ++step) {
      auto [d, j] = detail::nearest_segment(z, curve);
      if (d < epsilon) {
        walk_cell[w] = static_cast<std::uint32_t>(partition.cell_of_segment(j));
        return;
      }
      double t = rng.next_angle();
      z += d * Complex(std::cos(t), std::sin(t));
    }
  });

  MeasureVector mv;
  mv.n_walks = n_walks;
  mv.epsilon = epsilon;
  mv.hits.assign(n_cells, 0);
  for (std::uint32_t cell : walk_cell) {
    if (cell == kLost)
      ++mv.lost_walks;
    else
      ++mv.hits[cell];
  }
  std::size_t credited = n_walks - mv.lost_walks;
  if (credited == 0) throw numerical_failure("wos_harmonic_measure: every walk hit the step cap");
  mv.weights.resize(n_cells);
  for (std::size_t k = 0; k < n_cells; ++k)
    mv.weights[k] = static_cast<double>(mv.hits[k]) / static_cast<double>(credited);
  return mv;
}

// Exterior harmonic measure of Julia-set arcs between consecutive ray
// landings: equal to the angle increments, exactly. Breakpoints are
// ascending in [0,1]; a final 1 closes the partition, otherwise the last
// cell wraps around to the first breakpoint.
inline MeasureVector external_measure_arcs(const std::vector<double>& breakpoints) {
  if (breakpoints.size() < 2) throw std::invalid_argument("external_measure_arcs: need >= 2 breakpoints");
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    if (breakpoints[k] < 0.0 || breakpoints[k] > 1.0)
      throw std::invalid_argument("external_measure_arcs: breakpoints must lie in [0,1]");
    if (k > 0 && breakpoints[k] <= breakpoints[k - 1])
      throw std::invalid_argument("external_measure_arcs: breakpoints must increase");
  }
  MeasureVector mv;
  mv.exact = true;
  bool closed = breakpoints.back() == 1.0;
  std::size_t cells = closed ? breakpoints.size() - 1 : breakpoints.size();
  mv.weights.reserve(cells);
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k)
    mv.weights.push_back(breakpoints[k + 1] - breakpoints[k]);
  if (!closed) mv.weights.push_back(1.0 - breakpoints.back() + breakpoints.front());
  mv.hits.assign(cells, 0);
  return mv;
}

// Total-variation distance between a sampled measure and reference weights.
inline double total_variation(const MeasureVector& mv, const std::vector<double>& reference) {
  if (mv.weights.size() != reference.size())
    throw std::invalid_argument("total_variation: size mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < mv.weights.size(); ++k)
    acc += std::abs(mv.weights[k] - reference[k]);
  return 0.5 * acc;
}

}  // namespace capmotion
