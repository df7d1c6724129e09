#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "capmotion/errors.hpp"
#include "capmotion/geometry.hpp"
#include "capmotion/rng.hpp"

namespace capmotion {

// A plane deformation family indexed by a unit-disk parameter: injective in z
// for each parameter, analytic in the parameter for each z, and the identity
// at parameter 0. Families are evaluated only on their stated domains; the
// axioms are checked statistically by check_motion_axioms.
struct Motion {
  std::function<SpherePoint(Complex lambda, SpherePoint z)> evaluate;
  std::string name;
  std::string domain_note;
  bool fixes_infinity = true;

  Complex map_point(Complex lambda, Complex z) const {
    SpherePoint out = evaluate(lambda, SpherePoint(z));
    if (out.at_infinity) throw numerical_failure("Motion: finite point mapped to infinity");
    return out.value;
  }

  PointCloud map_cloud(Complex lambda, const PointCloud& cloud) const {
    PointCloud out;
    out.points.reserve(cloud.points.size());
    for (Complex z : cloud.points) out.points.push_back(map_point(lambda, z));
    out.label = cloud.label + "@" + name;
    out.generator_params = cloud.generator_params;
    out.generator_params["motion"] = name;
    out.generator_params["lambda_re"] = detail::format_double_key(lambda.real());
    out.generator_params["lambda_im"] = detail::format_double_key(lambda.imag());
    return out;
  }
};

inline void require_unit_disk(Complex lambda) {
  if (!(std::abs(lambda) < 1.0))
    throw std::invalid_argument("Motion: parameter must lie in the open unit disk");
}

// z + lambda * a. The simplest nontrivial family; exactly analytic and injective.
inline Motion motion_translation(Complex a) {
  if (!is_finite(a)) throw std::invalid_argument("motion_translation: shift must be finite");
  Motion m;
  m.name = "translation";
  m.domain_note = "entire plane and infinity";
  m.evaluate = [a](Complex lambda, SpherePoint z) -> SpherePoint {
    require_unit_disk(lambda);
    if (z.at_infinity) return SpherePoint::infinity();
    return SpherePoint(z.value + lambda * a);
  };
  return m;
}

// (1 + beta * lambda) * z with |beta| <= 1/2, so the factor stays away from 0.
inline Motion motion_scaling(Complex beta) {
  if (std::abs(beta) > 0.5)
    throw std::invalid_argument("motion_scaling: |beta| must be <= 1/2");
  Motion m;
  m.name = "scaling";
  m.domain_note = "entire plane and infinity";
  m.evaluate = [beta](Complex lambda, SpherePoint z) -> SpherePoint {
    require_unit_disk(lambda);
    if (z.at_infinity) return SpherePoint::infinity();
    return SpherePoint((1.0 + beta * lambda) * z.value);
  };
  return m;
}

// z + lambda * conj(z): the real-linear stretch. Injective on the plane for
// |lambda| < 1 (operator determinant 1 - |lambda|^2 > 0); maps circles to
// ellipses with axis ratio (1+|lambda|)/(1-|lambda|).
inline Motion motion_affine_stretch() {
  Motion m;
  m.name = "stretch";
  m.domain_note = "entire plane and infinity";
  m.evaluate = [](Complex lambda, SpherePoint z) -> SpherePoint {
    require_unit_disk(lambda);
    if (z.at_infinity) return SpherePoint::infinity();
    return SpherePoint(z.value + lambda * std::conj(z.value));
  };
  return m;
}

struct MotionAxiomReport {
  double identity_residual = 0.0;       // max |h(0,z) - z|
  double min_image_separation = 0.0;    // over sampled parameters, min pairwise image distance
  double min_preimage_separation = 0.0;
  bool injectivity_flag = false;        // images collide while preimages are separated
  double circle_mean_residual = 0.0;    // max_z |circle mean of h(.,z) - h(0,z)|
  double cauchy_riemann_residual = 0.0; // max_z conjugate-derivative magnitude at 0
  std::size_t points_tested = 0;
  std::size_t lambdas_tested = 0;

  bool passes(double tol) const {
    return identity_residual <= tol && circle_mean_residual <= tol &&
           cauchy_riemann_residual <= tol && !injectivity_flag;
  }
};

// Statistical check of the three defining properties on a sample cloud:
// identity at 0, injectivity per sampled parameter, and analyticity in the
// parameter via the discrete circle-mean and a conjugate-derivative stencil.
inline MotionAxiomReport check_motion_axioms(const Motion& motion, const PointCloud& test_points,
                                             double lambda_circle_radius = 0.5,
                                             std::size_t n_lambda = 16, std::uint64_t seed = 0,
                                             double separation_tol = 1e-9) {
  if (!(lambda_circle_radius > 0.0 && lambda_circle_radius < 1.0))
    throw std::invalid_argument("check_motion_axioms: circle radius must be in (0,1)");
  if (n_lambda < 4) throw std::invalid_argument("check_motion_axioms: need >= 4 parameter samples");
  test_points.validate();

  MotionAxiomReport rep;
  rep.points_tested = test_points.size();
  rep.lambdas_tested = n_lambda + 1;

  for (Complex z : test_points.points) {
    double r = std::abs(motion.map_point(Complex(0.0, 0.0), z) - z);
    rep.identity_residual = std::max(rep.identity_residual, r);
  }

  // Parameter samples: the given circle plus a few interior draws.
  std::vector<Complex> lambdas;
  for (std::size_t k = 0; k < n_lambda; ++k) {
    double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n_lambda);
    lambdas.emplace_back(lambda_circle_radius * std::cos(t), lambda_circle_radius * std::sin(t));
  }
  SeededStream rng(seed, 0);
  for (int k = 0; k < 4; ++k) {
    double rr = lambda_circle_radius * std::sqrt(rng.next_double());
    double tt = rng.next_angle();
    lambdas.emplace_back(rr * std::cos(tt), rr * std::sin(tt));
  }

  rep.min_image_separation = std::numeric_limits<double>::infinity();
  rep.min_preimage_separation = std::numeric_limits<double>::infinity();
  const auto& pts = test_points.points;
  for (Complex lam : lambdas) {
    std::vector<Complex> image(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) image[i] = motion.map_point(lam, pts[i]);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        double dp = std::abs(pts[i] - pts[j]);
        double di = std::abs(image[i] - image[j]);
        rep.min_preimage_separation = std::min(rep.min_preimage_separation, dp);
        if (dp > separation_tol) {
          rep.min_image_separation = std::min(rep.min_image_separation, di);
          if (di <= separation_tol) rep.injectivity_flag = true;
        }
      }
    }
  }

  // Analyticity in the parameter. The discrete mean over a parameter circle
  // must reproduce the value at 0, and the conjugate-derivative stencil
  // (f(d) - f(-d) + i f(id) - i f(-id)) / (4d) must vanish.
  double delta = 0.25 * lambda_circle_radius;
  for (Complex z : pts) {
    Complex at0 = motion.map_point(Complex(0.0, 0.0), z);
    Complex mean(0.0, 0.0);
    for (std::size_t k = 0; k < n_lambda; ++k) {
      double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n_lambda);
      mean += motion.map_point(Complex(lambda_circle_radius * std::cos(t),
                                       lambda_circle_radius * std::sin(t)),
                               z);
    }
    mean /= static_cast<double>(n_lambda);
    rep.circle_mean_residual = std::max(rep.circle_mean_residual, std::abs(mean - at0));

    Complex fe = motion.map_point(Complex(delta, 0.0), z);
    Complex fw = motion.map_point(Complex(-delta, 0.0), z);
    Complex fn = motion.map_point(Complex(0.0, delta), z);
    Complex fs = motion.map_point(Complex(0.0, -delta), z);
    Complex dx = (fe - fw) / (2.0 * delta);
    Complex dy = (fn - fs) / (2.0 * delta);
    Complex conj_deriv = 0.5 * (dx + Complex(0.0, 1.0) * dy);
    rep.cauchy_riemann_residual = std::max(rep.cauchy_riemann_residual, std::abs(conj_deriv));
  }
  return rep;
}

}  // namespace capmotion
