#include <catch2/catch_amalgamated.hpp>

#include "capmotion/capacity.hpp"
#include "capmotion/motion.hpp"
#include "oracles.hpp"

using namespace capmotion;
using Catch::Approx;

TEST_CASE("translation family", "[motion]") {
  auto m = motion_translation(Complex(1, 0));
  CHECK(m.map_point(Complex(0.5, 0), Complex(2, 0)) == Complex(2.5, 0));
  CHECK(m.map_point(Complex(0, 0), Complex(-3, 7)) == Complex(-3, 7));
  CHECK(m.evaluate(Complex(0.3, 0.1), SpherePoint::infinity()).at_infinity);
  CHECK_THROWS_AS(m.map_point(Complex(1.5, 0), Complex(0, 0)), std::invalid_argument);

  // Pairwise distances are unchanged, so so is the diameter estimate.
  auto cloud = gen_circle(256, 1.0);
  auto base = fekete_exchange(cloud, 8);
  auto moved = m.map_cloud(Complex(0.7, 0), cloud);
  auto shifted = fekete_exchange(moved, 8);
  CHECK(shifted.diameter == Approx(base.diameter).epsilon(1e-12));
}

TEST_CASE("scaling family", "[motion]") {
  auto m = motion_scaling(Complex(0.5, 0));
  CHECK(m.map_point(Complex(0.5, 0), Complex(2, 0)) == Complex(2.5, 0));
  CHECK(m.map_point(Complex(0, 0), Complex(1, 2)) == Complex(1, 2));
  CHECK_THROWS_AS(motion_scaling(Complex(0.6, 0)), std::invalid_argument);

  // Image capacity of the unit circle: |1 + lambda/2|.
  auto cloud = gen_circle(1024, 1.0);
  for (double lam : {-0.8, -0.3, 0.4, 0.8}) {
    auto rep = fekete_capacity(m.map_cloud(Complex(lam, 0), cloud), {8, 12, 16, 24, 32});
    CHECK(std::abs(rep.extrapolated - std::abs(1.0 + lam / 2.0)) < 0.02);
  }
}

TEST_CASE("stretch family", "[motion]") {
  auto m = motion_affine_stretch();
  // Axis images at real parameter 0.5: semi-axes 1.5 and 0.5.
  CHECK(m.map_point(Complex(0.5, 0), Complex(1, 0)) == Complex(1.5, 0));
  CHECK(m.map_point(Complex(0.5, 0), Complex(0, 1)) == Complex(0, 0.5));

  // Capacity of the image ellipse stays 1 for every real parameter.
  auto cloud = gen_circle(1024, 1.0);
  for (double lam : {-0.5, 0.25, 0.5}) {
    auto rep = fekete_capacity(m.map_cloud(Complex(lam, 0), cloud), {8, 12, 16, 24, 32});
    double semi_sum = 0.5 * ((1.0 + std::abs(lam)) + (1.0 - std::abs(lam)));
    CHECK(std::abs(rep.extrapolated - semi_sum) < 0.025);
  }

  // Image of a segment: [-1,1] stretches to length 2(1+lambda).
  auto seg = gen_segment(1024, Complex(-1, 0), Complex(1, 0));
  for (double lam : {0.25, 0.5}) {
    auto rep = fekete_capacity(m.map_cloud(Complex(lam, 0), seg), {8, 12, 16, 24, 32});
    CHECK(std::abs(rep.extrapolated - (1.0 + lam) / 2.0) < 0.02);
  }
}

TEST_CASE("axiom checker accepts the exact families", "[motion]") {
  auto cloud = gen_circle(24, 1.0, Complex(0.1, 0.2));
  for (const Motion& m :
       {motion_translation(Complex(1, 0)), motion_scaling(Complex(0.5, 0)),
        motion_affine_stretch()}) {
    auto rep = check_motion_axioms(m, cloud, 0.5, 16, 3);
    INFO(m.name);
    CHECK(rep.identity_residual < 1e-10);
    CHECK(rep.circle_mean_residual < 1e-10);
    CHECK(rep.cauchy_riemann_residual < 1e-10);
    CHECK_FALSE(rep.injectivity_flag);
    CHECK(rep.passes(1e-10));
  }
}

TEST_CASE("axiom checker flags conjugate-parameter dependence", "[motion]") {
  Motion fake;
  fake.name = "conjugate";
  fake.domain_note = "entire plane";
  fake.evaluate = [](Complex lambda, SpherePoint z) -> SpherePoint {
    if (z.at_infinity) return SpherePoint::infinity();
    return SpherePoint(z.value + std::conj(lambda));
  };
  auto rep = check_motion_axioms(fake, gen_circle(8, 1.0), 0.5, 16, 3);
  CHECK(rep.identity_residual < 1e-12);      // identity still holds
  CHECK(rep.cauchy_riemann_residual > 0.5);  // but the parameter map is not analytic
  CHECK_FALSE(rep.passes(1e-6));
}

TEST_CASE("stretch stays injective near the parameter boundary", "[motion]") {
  auto rep = check_motion_axioms(motion_affine_stretch(), gen_circle(32, 1.0), 0.9, 16, 5);
  CHECK_FALSE(rep.injectivity_flag);
  CHECK(rep.min_image_separation > 0.0);
}

TEST_CASE("axiom checker flags a collapsing family", "[motion]") {
  Motion collapse;
  collapse.name = "collapse";
  collapse.domain_note = "entire plane";
  // At |lambda| = 0.5 the imaginary parts vanish: distinct points collide.
  collapse.evaluate = [](Complex lambda, SpherePoint z) -> SpherePoint {
    if (z.at_infinity) return SpherePoint::infinity();
    Complex w = z.value;
    return SpherePoint(Complex(w.real(), w.imag() * (1.0 - 2.0 * std::abs(lambda))));
  };
  auto rep = check_motion_axioms(collapse, gen_circle(16, 1.0), 0.5, 16, 3);
  CHECK(rep.injectivity_flag);
}
