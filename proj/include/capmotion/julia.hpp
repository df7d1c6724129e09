#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "capmotion/errors.hpp"
#include "capmotion/geometry.hpp"
#include "capmotion/motion.hpp"
#include "capmotion/parallel.hpp"
#include "capmotion/rng.hpp"

namespace capmotion {

inline Complex quadratic_step(Complex z, Complex c) { return z * z + c; }

// True iff the critical orbit of z^2 + c stays within escape_radius for
// max_iter steps.
inline bool mandelbrot_membership(Complex c, std::size_t max_iter = 256,
                                  double escape_radius = 4.0) {
  if (max_iter < 1) throw std::invalid_argument("mandelbrot_membership: max_iter >= 1");
  Complex z(0.0, 0.0);
  for (std::size_t k = 0; k < max_iter; ++k) {
    z = quadratic_step(z, c);
    if (std::abs(z) > escape_radius) return false;
  }
  return true;
}

// The repelling (beta) fixed point of z^2 + c: the larger root of z^2 + c = z.
// Lies on the Julia set for every parameter.
inline Complex beta_fixed_point(Complex c) {
  Complex root = std::sqrt(Complex(1.0, 0.0) - 4.0 * c);
  Complex plus = 0.5 * (Complex(1.0, 0.0) + root);
  Complex minus = 0.5 * (Complex(1.0, 0.0) - root);
  return std::abs(plus) >= std::abs(minus) ? plus : minus;
}

// Samples the Julia set of z^2 + c by random backward orbits z <- ±sqrt(z-c).
// Each output point runs its own chain of length burn_in from the beta fixed
// point, with branch signs drawn from a per-sample stream, so the cloud is
// independent of scheduling. Backward orbits of a Julia-set point stay on the
// Julia set; the chain length controls how well the cloud approximates the
// balanced sampling distribution.
inline PointCloud julia_inverse_iteration(Complex c, std::size_t n_samples,
                                          std::size_t burn_in = 64, std::uint64_t seed = 0,
                                          int workers = 1) {
  if (n_samples < 1) throw std::invalid_argument("julia_inverse_iteration: need n_samples >= 1");
  PointCloud out;
  out.points.resize(n_samples);
  Complex start = beta_fixed_point(c);
  parallel_for(n_samples, workers, [&](std::size_t i) {
    SeededStream rng(seed, i);
    Complex z = start;
    for (std::size_t k = 0; k < burn_in; ++k) {
      Complex w = std::sqrt(z - c);
      z = (rng.next_sign() > 0) ? w : -w;
    }
    out.points[i] = z;
  });
  out.label = "julia";
  out.generator_params = {{"c_re", detail::format_double_key(c.real())},
                          {"c_im", detail::format_double_key(c.imag())},
                          {"n_samples", std::to_string(n_samples)},
                          {"burn_in", std::to_string(burn_in)},
                          {"seed", std::to_string(seed)},
                          {"algo", "inverse-iteration"}};
  return out;
}

// Parameters of the backward-square-root evaluation of the exterior
// uniformization of a quadratic Julia set.
struct BottcherParams {
  std::size_t depth = 24;        // backward steps
  double escape_radius = 1e4;    // seed magnitude where the map is near-identity
  double tolerance = 1e-4;       // target evaluation accuracy
  double max_abs_c = 0.2;        // closed parameter disk where evaluation is allowed
  bool allow_outside_test_region = false;
  bool first_order_seed = false; // apply the w + c/(2w) seed correction

  void validate() const {
    if (depth < 8) throw std::invalid_argument("BottcherParams: depth must be >= 8");
    if (escape_radius < 100.0)
      throw std::invalid_argument("BottcherParams: escape_radius must be >= 100");
    if (!(tolerance > 0.0)) throw std::invalid_argument("BottcherParams: tolerance must be positive");
  }

  void require_parameter(Complex c) const {
    validate();
    if (!allow_outside_test_region && std::abs(c) > max_abs_c)
      throw std::invalid_argument(
          "Bottcher evaluation: |c| outside the closed test disk of radius " +
          detail::format_double_key(max_abs_c) +
          " (set allow_outside_test_region to override)");
  }
};

inline double frac(double x) { return x - std::floor(x); }

namespace detail {

// Angular distance on the circle, in radians, result in [0, pi].
inline double circle_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return d > kPi ? kTwoPi - d : d;
}

// Evaluates the exterior uniformizing map of the Julia set of z^2 + c at the
// point with log-radius log_rho >= 0 and angle theta (in turns). Backward
// square roots track the angle-doubling itinerary: the seed is taken at the
// first dyadic power whose radius reaches escape_radius (where the map is
// the identity up to O(1/R)), then square roots walk back down, each branch
// chosen nearest the target angle 2^k * theta. Points with tiny log-radius
// never reach the escape radius within `depth` steps; they are seeded at the
// escape radius on the same ray, which approximates the boundary extension
// to within (log R) / 2^depth.
inline Complex bottcher_exterior_eval(Complex c, double log_rho, double theta,
                                      const BottcherParams& params) {
  params.require_parameter(c);
  if (log_rho < 0.0) throw std::invalid_argument("bottcher_exterior_eval: need |z| >= 1");
  if (c == Complex(0.0, 0.0)) {
    // Identity family member, returned exactly.
    double r = std::exp(log_rho);
    return Complex(r * std::cos(kTwoPi * theta), r * std::sin(kTwoPi * theta));
  }

  const double log_R = std::log(params.escape_radius);
  std::size_t steps = 0;
  double lr = log_rho;
  while (steps < params.depth && lr < log_R) {
    lr *= 2.0;
    ++steps;
  }
  // Angle itinerary theta_k = frac(2^k theta), k = 0..steps.
  std::vector<double> angles(steps + 1);
  angles[0] = frac(theta);
  for (std::size_t k = 1; k <= steps; ++k) angles[k] = frac(2.0 * angles[k - 1]);

  double seed_radius = std::max(lr, log_R);  // radius clamp for deep boundary points
  Complex w = std::exp(seed_radius) *
              Complex(std::cos(kTwoPi * angles[steps]), std::sin(kTwoPi * angles[steps]));
  if (params.first_order_seed) w += c / (2.0 * w);

  for (std::size_t k = steps; k-- > 0;) {
    Complex root = std::sqrt(w - c);
    double target = kTwoPi * angles[k];
    double d_plus = circle_distance(std::arg(root), target);
    double d_minus = circle_distance(std::arg(-root), target);
    if (std::abs(d_plus - d_minus) < 1e-9)
      throw numerical_failure("bottcher_exterior_eval: ambiguous square-root branch at step " +
                              std::to_string(k) + " (angle " + std::to_string(angles[k]) + ")");
    w = (d_plus <= d_minus) ? root : -root;
  }
  return w;
}

}  // namespace detail

// Boundary extension of the exterior uniformizing map: the point of the Julia
// set where the external ray of the given angle (in turns) lands. Valid for
// parameters in the closed quasicircle test disk |c| <= 0.2, where the Julia
// set is a quasicircle and the extension is continuous.
inline Complex external_ray_landing(Complex c, double theta, const BottcherParams& params = {}) {
  return detail::bottcher_exterior_eval(c, 0.0, theta, params);
}

// Verifies that a claimed Julia-set point has a bounded forward orbit for
// `steps` iterations. Used as a post-check on landing points.
inline bool forward_orbit_bounded(Complex c, Complex z, std::size_t steps, double radius) {
  Complex w = z;
  for (std::size_t k = 0; k < steps; ++k) {
    w = quadratic_step(w, c);
    if (std::abs(w) > radius) return false;
  }
  return true;
}

// The Julia-set family as a deformation of the closed exterior of the unit
// disk: parameter lambda acts through the exterior uniformizing map of
// z^2 + lambda/4. Unit-circle points go to ray landing points; exterior
// points to the conformal image; infinity stays fixed.
inline Motion motion_bottcher(const BottcherParams& params = {}) {
  params.validate();
  Motion m;
  m.name = "bottcher";
  m.domain_note = "closed exterior of the unit disk plus infinity";
  m.fixes_infinity = true;
  m.evaluate = [params](Complex lambda, SpherePoint z) -> SpherePoint {
    require_unit_disk(lambda);
    if (z.at_infinity) return SpherePoint::infinity();
    double rho = std::abs(z.value);
    // Tolerate points that are on the unit circle up to rounding.
    if (rho < 1.0 - 1e-12)
      throw std::invalid_argument("motion_bottcher: point inside the unit disk");
    double log_rho = std::max(0.0, std::log(rho));
    double theta = std::arg(z.value) / kTwoPi;
    Complex c = lambda / 4.0;
    return SpherePoint(detail::bottcher_exterior_eval(c, log_rho, theta, params));
  };
  return m;
}

}  // namespace capmotion
