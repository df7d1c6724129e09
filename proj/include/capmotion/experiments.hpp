#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "capmotion/capacity.hpp"
#include "capmotion/curve.hpp"
#include "capmotion/errors.hpp"
#include "capmotion/geometry.hpp"
#include "capmotion/julia.hpp"
#include "capmotion/motion.hpp"
#include "capmotion/parallel.hpp"

namespace capmotion {

struct SweepRow {
  Complex lambda{0.0, 0.0};
  double capacity = 0.0;       // extrapolated ladder value
  double capacity_raw = 0.0;   // diameter at the largest n
  double capacity_err = 0.0;   // |raw - extrapolated| bracket width
  std::optional<double> area;
  std::optional<double> area_err;
  std::optional<double> boxdim;
  std::optional<double> boxdim_err;
  bool ladder_monotone = true;
  bool failed = false;
  std::string failure;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::string motion_id;
  std::string set_id;
  std::string config_hash;

  const SweepRow& row_at_zero() const {
    for (const SweepRow& r : rows)
      if (r.lambda == Complex(0.0, 0.0) && !r.failed) return r;
    throw std::invalid_argument("SweepTable: no successful row at 0");
  }
};

struct SweepConfig {
  std::vector<std::size_t> n_values{8, 12, 16, 24, 32, 48, 64};
  std::size_t max_passes = 6;
  std::uint64_t seed = 0;
  int workers = 0;
  bool compute_area = false;     // treat the image cloud as a closed curve and fill it
  bool compute_boxdim = false;
  std::size_t area_grid = 1024;
  // Sub-diameter dyadic scales; coarse depths sit above the transition scale
  // of eccentric images and bias the slope, so they are excluded by default.
  std::vector<std::size_t> boxdim_depths{4, 5, 6, 7, 8, 9};
};

// Cell-counting area of the region described by an indicator: the fraction
// of grid-cell centers inside, scaled by the box area. The reported error is
// the boundary-cell bound (cells whose neighborhood straddles the boundary).
inline std::pair<double, double> area_estimate(const std::function<bool(Complex)>& inside,
                                               Complex box_lo, Complex box_hi,
                                               std::size_t grid_n) {
  if (grid_n < 8) throw std::invalid_argument("area_estimate: grid too coarse");
  if (!(box_lo.real() < box_hi.real() && box_lo.imag() < box_hi.imag()))
    throw std::invalid_argument("area_estimate: empty box");
  double wx = box_hi.real() - box_lo.real();
  double wy = box_hi.imag() - box_lo.imag();
  double cell = wx * wy / (static_cast<double>(grid_n) * static_cast<double>(grid_n));
  std::vector<char> mask(grid_n * grid_n, 0);
  for (std::size_t iy = 0; iy < grid_n; ++iy) {
    double y = box_lo.imag() + wy * (static_cast<double>(iy) + 0.5) / static_cast<double>(grid_n);
    for (std::size_t ix = 0; ix < grid_n; ++ix) {
      double x = box_lo.real() + wx * (static_cast<double>(ix) + 0.5) / static_cast<double>(grid_n);
      mask[iy * grid_n + ix] = inside(Complex(x, y)) ? 1 : 0;
    }
  }
  std::size_t in_count = 0, boundary = 0;
  for (std::size_t iy = 0; iy < grid_n; ++iy) {
    for (std::size_t ix = 0; ix < grid_n; ++ix) {
      char v = mask[iy * grid_n + ix];
      in_count += v;
      bool edge = false;
      if (ix + 1 < grid_n && mask[iy * grid_n + ix + 1] != v) edge = true;
      if (iy + 1 < grid_n && mask[(iy + 1) * grid_n + ix] != v) edge = true;
      if (edge) ++boundary;
    }
  }
  return {cell * static_cast<double>(in_count), cell * static_cast<double>(boundary)};
}

// Same counting rule specialized to a polygon interior, using one scanline
// crossing pass per grid row instead of a point-in-polygon test per cell.
inline std::pair<double, double> area_of_polygon(const JordanCurveApprox& curve,
                                                 std::size_t grid_n) {
  curve.validate();
  double lo_x = curve.vertices[0].real(), hi_x = lo_x;
  double lo_y = curve.vertices[0].imag(), hi_y = lo_y;
  for (Complex v : curve.vertices) {
    lo_x = std::min(lo_x, v.real());
    hi_x = std::max(hi_x, v.real());
    lo_y = std::min(lo_y, v.imag());
    hi_y = std::max(hi_y, v.imag());
  }
  double pad_x = 0.05 * (hi_x - lo_x) + 1e-12, pad_y = 0.05 * (hi_y - lo_y) + 1e-12;
  lo_x -= pad_x;
  hi_x += pad_x;
  lo_y -= pad_y;
  hi_y += pad_y;

  double wx = hi_x - lo_x, wy = hi_y - lo_y;
  double cell = wx * wy / (static_cast<double>(grid_n) * static_cast<double>(grid_n));
  const auto& v = curve.vertices;
  std::size_t n = v.size();
  std::size_t in_count = 0, boundary = 0;
  std::vector<double> xs;
  std::vector<char> prev_row(grid_n, 0), row(grid_n, 0);
  for (std::size_t iy = 0; iy < grid_n; ++iy) {
    double y = lo_y + wy * (static_cast<double>(iy) + 0.5) / static_cast<double>(grid_n);
    xs.clear();
    for (std::size_t j = 0; j < n; ++j) {
      Complex a = v[j], b = v[(j + 1) % n];
      if ((a.imag() <= y) == (b.imag() <= y)) continue;  // no crossing
      double t = (y - a.imag()) / (b.imag() - a.imag());
      xs.push_back(a.real() + t * (b.real() - a.real()));
    }
    std::sort(xs.begin(), xs.end());
    // Even-odd fill along the row.
    std::size_t cross = 0;
    for (std::size_t ix = 0; ix < grid_n; ++ix) {
      double x = lo_x + wx * (static_cast<double>(ix) + 0.5) / static_cast<double>(grid_n);
      while (cross < xs.size() && xs[cross] < x) ++cross;
      row[ix] = static_cast<char>(cross & 1u);
      in_count += row[ix];
      if (ix > 0 && row[ix] != row[ix - 1]) ++boundary;
      if (iy > 0 && row[ix] != prev_row[ix]) ++boundary;
    }
    std::swap(row, prev_row);
  }
  return {cell * static_cast<double>(in_count), cell * static_cast<double>(boundary)};
}

struct BoxDimensionResult {
  double dimension = 0.0;
  double stderr_slope = 0.0;
  double max_residual = 0.0;
  std::vector<std::pair<double, std::size_t>> counts;  // (epsilon, boxes)
};

// Box-counting slope of the cloud over dyadic scales eps_k = diameter / 2^k.
// A proxy for Hausdorff dimension; the fit diagnostics expose how well the
// counts follow a power law. Scales where fewer than two boxes are occupied
// carry no slope information and are dropped from the fit.
inline BoxDimensionResult box_dimension(const PointCloud& cloud,
                                        const std::vector<std::size_t>& depths) {
  cloud.validate();
  if (depths.size() < 4) throw std::invalid_argument("box_dimension: need >= 4 scales");
  double lo_x = cloud.points[0].real(), hi_x = lo_x;
  double lo_y = cloud.points[0].imag(), hi_y = lo_y;
  for (Complex p : cloud.points) {
    lo_x = std::min(lo_x, p.real());
    hi_x = std::max(hi_x, p.real());
    lo_y = std::min(lo_y, p.imag());
    hi_y = std::max(hi_y, p.imag());
  }
  double diam = std::hypot(hi_x - lo_x, hi_y - lo_y);
  if (diam == 0.0) throw std::invalid_argument("box_dimension: degenerate cloud");

  BoxDimensionResult res;
  std::vector<std::pair<double, double>> fit;  // (log 1/eps, log N)
  for (std::size_t depth : depths) {
    double eps = diam / std::pow(2.0, static_cast<double>(depth));
    // Hash occupied boxes via sorted packed indices.
    std::vector<std::uint64_t> keys;
    keys.reserve(cloud.points.size());
    for (Complex p : cloud.points) {
      auto ix = static_cast<std::uint64_t>(std::floor((p.real() - lo_x) / eps));
      auto iy = static_cast<std::uint64_t>(std::floor((p.imag() - lo_y) / eps));
      keys.push_back((ix << 32) | (iy & 0xffffffffULL));
    }
    std::sort(keys.begin(), keys.end());
    std::size_t boxes = static_cast<std::size_t>(
        std::unique(keys.begin(), keys.end()) - keys.begin());
    res.counts.emplace_back(eps, boxes);
    if (boxes >= 2) fit.emplace_back(std::log(1.0 / eps), std::log(static_cast<double>(boxes)));
  }
  if (fit.size() < 2) throw std::invalid_argument("box_dimension: not enough informative scales");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (auto [x, y] : fit) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double k = static_cast<double>(fit.size());
  double denom = k * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("box_dimension: degenerate scale set");
  double slope = (k * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / k;
  res.dimension = slope;
  double ss_res = 0.0;
  for (auto [x, y] : fit) {
    double r = y - (slope * x + intercept);
    ss_res += r * r;
    res.max_residual = std::max(res.max_residual, std::abs(r));
  }
  if (fit.size() > 2) {
    double var = ss_res / (k - 2.0);
    res.stderr_slope = std::sqrt(var * k / denom);
  }
  return res;
}

// Capacity (and optionally area / box dimension) of the image of E under the
// motion, per grid parameter. Rows are independent jobs; a failed motion
// evaluation marks its row and the sweep continues.
inline SweepTable capacity_sweep(const Motion& motion, const PointCloud& set,
                                 const LambdaGrid& grid, const SweepConfig& config = {}) {
  set.validate();
  grid.validate();
  SweepTable table;
  table.motion_id = motion.name;
  table.set_id = set.label;
  table.rows.resize(grid.samples.size());

  std::vector<std::size_t> n_values = config.n_values;
  for (std::size_t n : n_values)
    if (n > set.size())
      throw std::invalid_argument("capacity_sweep: ladder n exceeds set size");

  // Rows run sequentially; the optimizer itself fans out over workers.
  for (std::size_t r = 0; r < grid.samples.size(); ++r) {
    SweepRow& row = table.rows[r];
    row.lambda = grid.samples[r];
    try {
      PointCloud image = motion.map_cloud(row.lambda, set);
      CapacityReport rep =
          fekete_capacity(image, n_values, config.max_passes, config.seed, config.workers);
      row.capacity = rep.extrapolated;
      row.capacity_raw = rep.raw_estimate;
      row.capacity_err = rep.bracket_error();
      row.ladder_monotone = rep.monotone;
      if (config.compute_area) {
        auto [a, err] = area_of_polygon(curve_from_cloud(image), config.area_grid);
        row.area = a;
        row.area_err = err;
      }
      if (config.compute_boxdim) {
        BoxDimensionResult bd = box_dimension(image, config.boxdim_depths);
        row.boxdim = bd.dimension;
        row.boxdim_err = std::max(bd.stderr_slope, bd.max_residual);
      }
    } catch (const std::exception& e) {
      row.failed = true;
      row.failure = e.what();
    }
  }
  return table;
}

struct CheckReport {
  std::string name;
  std::size_t samples_tested = 0;
  std::size_t samples_skipped = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  void finalize() { pass = worst_violation <= tolerance; }
};

// Largest jump and steepness of log(capacity) along a parameter path.
// Passes when the largest jump respects the configured modulus
// tol(h) = slope_constant * h + absolute_floor evaluated at the largest
// consecutive spacing of the path.
inline CheckReport continuity_report(const SweepTable& table, const std::vector<Complex>& path,
                                     double slope_constant = 1.0, double absolute_floor = 0.0) {
  CheckReport rep;
  rep.name = "continuity";
  if (path.size() < 2) throw std::invalid_argument("continuity_report: path too short");

  auto find_row = [&table](Complex lam) -> const SweepRow& {
    for (const SweepRow& r : table.rows)
      if (r.lambda == lam) {
        if (r.failed) throw std::invalid_argument("continuity_report: path row failed");
        return r;
      }
    throw std::invalid_argument("continuity_report: path parameter missing from table");
  };

  double max_jump = 0.0, max_ratio = 0.0, max_h = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const SweepRow& a = find_row(path[k]);
    const SweepRow& b = find_row(path[k + 1]);
    if (!(a.capacity > 0.0 && b.capacity > 0.0))
      throw std::invalid_argument("continuity_report: nonpositive capacity on path");
    double h = std::abs(path[k + 1] - path[k]);
    if (h == 0.0) throw std::invalid_argument("continuity_report: repeated path point");
    double jump = std::abs(std::log(b.capacity) - std::log(a.capacity));
    max_jump = std::max(max_jump, jump);
    max_ratio = std::max(max_ratio, jump / h);
    max_h = std::max(max_h, h);
    ++rep.samples_tested;
  }
  rep.worst_violation = max_jump;
  rep.tolerance = slope_constant * max_h + absolute_floor;
  rep.finalize();
  return rep;
}

// A sampled function on a parameter grid, matched by exact lookup with a
// snapping tolerance (the grids this library builds carry the circle points
// verbatim, so interpolation is unnecessary).
struct SampledFunction {
  std::vector<Complex> points;
  std::vector<double> values;

  static SampledFunction from_sweep_log_capacity(const SweepTable& t) {
    SampledFunction f;
    for (const SweepRow& r : t.rows) {
      if (r.failed) continue;
      if (!(r.capacity > 0.0)) continue;
      f.points.push_back(r.lambda);
      f.values.push_back(std::log(r.capacity));
    }
    return f;
  }

  std::optional<double> lookup(Complex z, double snap = 1e-9) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (std::abs(points[i] - z) <= snap) return values[i];
    return std::nullopt;
  }
};

// Discrete submean inequality: at each requested circle, the center value
// must not exceed the mean over >= 16 sampled circle points by more than the
// tolerance. Circles whose sample points are missing from the grid are
// skipped and reported.
inline CheckReport submean_check(const SampledFunction& u, const std::vector<Complex>& centers,
                                 const std::vector<double>& radii, double tolerance = 1e-2,
                                 std::size_t circle_points = 16) {
  if (circle_points < 16) throw std::invalid_argument("submean_check: need >= 16 circle points");
  CheckReport rep;
  rep.name = "submean";
  rep.tolerance = tolerance;
  for (Complex center : centers) {
    auto u0 = u.lookup(center);
    for (double r : radii) {
      if (!u0) {
        ++rep.samples_skipped;
        continue;
      }
      double mean = 0.0;
      bool complete = true;
      for (std::size_t k = 0; k < circle_points; ++k) {
        double t = kTwoPi * static_cast<double>(k) / static_cast<double>(circle_points);
        auto uv = u.lookup(center + r * Complex(std::cos(t), std::sin(t)));
        if (!uv) {
          complete = false;
          break;
        }
        mean += *uv;
      }
      if (!complete) {
        ++rep.samples_skipped;
        continue;
      }
      mean /= static_cast<double>(circle_points);
      rep.worst_violation = std::max(rep.worst_violation, *u0 - mean);
      ++rep.samples_tested;
    }
  }
  if (rep.samples_tested == 0)
    throw std::invalid_argument("submean_check: no circle covered by the grid");
  rep.finalize();
  return rep;
}

// Growth bound for functions bounded above by M: the deficiency ratio
// (M - u(lambda)) / (M - u(0)) must stay below the disk growth factor
// (rho + |lambda|) / (rho - |lambda|) on every sample inside the disk of
// radius rho.
inline CheckReport harnack_check(const SampledFunction& u, double rho, double M,
                                 double tolerance = 1e-2) {
  if (!(rho > 0.0)) throw std::invalid_argument("harnack_check: rho must be positive");
  CheckReport rep;
  rep.name = "harnack";
  rep.tolerance = tolerance;
  auto u0 = u.lookup(Complex(0.0, 0.0));
  if (!u0) throw std::invalid_argument("harnack_check: grid must contain 0");
  if (!(*u0 < M)) throw std::invalid_argument("harnack_check: M does not dominate u(0)");
  for (std::size_t i = 0; i < u.points.size(); ++i) {
    double a = std::abs(u.points[i]);
    if (a >= rho) {
      ++rep.samples_skipped;
      continue;
    }
    if (!(u.values[i] < M))
      throw std::invalid_argument("harnack_check: M does not dominate u on the disk");
    double ratio = (M - u.values[i]) / (M - *u0);
    double bound = (rho + a) / (rho - a);
    rep.worst_violation = std::max(rep.worst_violation, ratio - bound);
    ++rep.samples_tested;
  }
  rep.finalize();
  return rep;
}

struct DimensionRow {
  double c = 0.0;
  double boxdim = 0.0;
  double boxdim_err = 0.0;
  double capacity = 0.0;  // pairwise-energy estimate
  std::size_t samples = 0;
};

// Box-dimension and capacity survey of Cantor Julia sets over real
// parameters outside the connectedness locus, sorted by c.
inline std::vector<DimensionRow> dimension_table(const std::vector<double>& c_list,
                                                 std::size_t samples,
                                                 const std::vector<std::size_t>& depths,
                                                 std::uint64_t seed, std::size_t burn_in = 96,
                                                 std::size_t energy_pairs = 200000,
                                                 int workers = 0) {
  if (c_list.empty()) throw std::invalid_argument("dimension_table: empty parameter list");
  std::vector<DimensionRow> rows;
  for (double c : c_list) {
    if (mandelbrot_membership(Complex(c, 0.0), 512, 4.0))
      throw std::invalid_argument("dimension_table: parameter inside the connectedness locus: " +
                                  detail::format_double_key(c));
    DimensionRow row;
    row.c = c;
    row.samples = samples;
    PointCloud cloud = julia_inverse_iteration(Complex(c, 0.0), samples, burn_in, seed, workers);
    BoxDimensionResult bd = box_dimension(cloud, depths);
    row.boxdim = bd.dimension;
    row.boxdim_err = std::max(bd.stderr_slope, 0.25 * bd.max_residual);
    row.capacity = energy_capacity(cloud, energy_pairs, seed, workers).capacity;
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(),
            [](const DimensionRow& a, const DimensionRow& b) { return a.c < b.c; });
  return rows;
}

}  // namespace capmotion
