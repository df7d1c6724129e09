#include <catch2/catch_amalgamated.hpp>

#include "capmotion/curve.hpp"
#include "capmotion/geometry.hpp"
#include "capmotion/rng.hpp"
#include "oracles.hpp"

using namespace capmotion;
using Catch::Approx;

TEST_CASE("gen_circle places equally spaced points", "[core]") {
  auto four = gen_circle(4, 1.0);
  REQUIRE(four.size() == 4);
  CHECK(std::abs(four.points[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(four.points[1] - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(four.points[2] - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(four.points[3] - Complex(0, -1)) < 1e-15);

  auto three = gen_circle(3, 1.0);
  for (int k = 0; k < 3; ++k) {
    Complex root = std::polar(1.0, kTwoPi * k / 3.0);
    CHECK(std::abs(three.points[k] - root) < 1e-15);
  }

  auto shifted = gen_circle(4, 0.5, Complex(1, 0));
  CHECK(std::abs(shifted.points[0] - Complex(1.5, 0)) < 1e-15);
  CHECK(std::abs(shifted.points[1] - Complex(1.0, 0.5)) < 1e-15);
  CHECK(std::abs(shifted.points[2] - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(shifted.points[3] - Complex(1.0, -0.5)) < 1e-15);

  CHECK_THROWS_AS(gen_circle(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gen_circle(8, 0.0), std::invalid_argument);
}

TEST_CASE("gen_circle radius invariant", "[core][property]") {
  SeededStream rng(2024, 0);
  for (int trial = 0; trial < 20; ++trial) {
    double r = 0.1 + 3.0 * rng.next_double();
    Complex center(rng.next_double() - 0.5, rng.next_double() - 0.5);
    std::size_t n = 3 + rng.next_below(60);
    auto cloud = gen_circle(n, r, center);
    for (Complex p : cloud.points) CHECK(std::abs(std::abs(p - center) - r) < 1e-12 * (1.0 + r));
  }
}

TEST_CASE("gen_segment endpoints and spacing", "[core]") {
  auto a = gen_segment(3, Complex(-2, 0), Complex(2, 0));
  REQUIRE(a.size() == 3);
  CHECK(a.points[0] == Complex(-2, 0));
  CHECK(a.points[1] == Complex(0, 0));
  CHECK(a.points[2] == Complex(2, 0));

  auto b = gen_segment(2, Complex(0, 0), Complex(1, 0));
  CHECK(b.points[0] == Complex(0, 0));
  CHECK(b.points[1] == Complex(1, 0));

  auto c = gen_segment(5, Complex(0, 0), Complex(0, 4));
  for (int k = 0; k < 5; ++k) CHECK(std::abs(c.points[k] - Complex(0, k)) < 1e-15);

  CHECK_THROWS_AS(gen_segment(1, Complex(0, 0), Complex(1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(gen_segment(4, Complex(1, 1), Complex(1, 1)), std::invalid_argument);
}

TEST_CASE("cantor quarter square construction", "[core]") {
  // Level 0 with corner sampling: the unit square's corners.
  auto base = gen_cantor_quarter_square(0, 4);
  REQUIRE(base.size() == 4);
  CHECK(base.points[0] == Complex(0, 0));
  CHECK(base.points[3] == Complex(1, 1));

  // Level 1: 4 squares of side 1/4 at the corners.
  auto one = gen_cantor_quarter_square(1, 1);  // centers of the 4 squares
  REQUIRE(one.size() == 4);
  CHECK(std::abs(one.points[0] - Complex(0.125, 0.125)) < 1e-15);
  CHECK(std::abs(one.points[3] - Complex(0.875, 0.875)) < 1e-15);

  // 4^k squares, every point in the unit square.
  for (std::size_t level : {2, 3, 4}) {
    auto cloud = gen_cantor_quarter_square(level, 4);
    CHECK(cloud.size() == std::size_t(std::pow(4.0, double(level))) * 4);
    for (Complex p : cloud.points) {
      CHECK(p.real() >= 0.0);
      CHECK(p.real() <= 1.0);
      CHECK(p.imag() >= 0.0);
      CHECK(p.imag() <= 1.0);
    }
  }
  CHECK_THROWS_AS(gen_cantor_quarter_square(1, 0), std::invalid_argument);
}

TEST_CASE("dist_to_curve on simple shapes", "[core]") {
  JordanCurveApprox square;
  square.vertices = {Complex(1, 1), Complex(-1, 1), Complex(-1, -1), Complex(1, -1)};
  CHECK(dist_to_curve(Complex(0, 0), square) == Approx(1.0));
  CHECK(dist_to_curve(Complex(1, 1), square) == 0.0);

  auto polygon = curve_from_cloud(gen_circle(1024, 1.0));
  // Exact circle oracle: |3| - 1 = 2.
  CHECK(std::abs(dist_to_curve(Complex(3, 0), polygon) - 2.0) < 1e-4);
}

TEST_CASE("dist_to_curve is 1-Lipschitz", "[core][property]") {
  auto polygon = curve_from_cloud(gen_circle(64, 1.3, Complex(0.2, -0.1)));
  SeededStream rng(7, 0);
  for (int trial = 0; trial < 200; ++trial) {
    Complex z1(4.0 * rng.next_double() - 2.0, 4.0 * rng.next_double() - 2.0);
    Complex z2(4.0 * rng.next_double() - 2.0, 4.0 * rng.next_double() - 2.0);
    double lhs = std::abs(dist_to_curve(z1, polygon) - dist_to_curve(z2, polygon));
    CHECK(lhs <= std::abs(z1 - z2) * (1.0 + 1e-12) + 1e-15);
  }
}

TEST_CASE("winding and containment", "[core]") {
  auto polygon = curve_from_cloud(gen_circle(128, 1.0));
  CHECK(point_strictly_inside(Complex(0, 0), polygon));
  CHECK(point_strictly_inside(Complex(0.5, 0.3), polygon));
  CHECK_FALSE(point_strictly_inside(Complex(3, 0), polygon));
}

TEST_CASE("curve simplicity scan", "[core]") {
  auto polygon = curve_from_cloud(gen_circle(64, 1.0));
  CHECK(curve_is_simple(polygon));

  JordanCurveApprox bowtie;
  bowtie.vertices = {Complex(0, 0), Complex(1, 1), Complex(1, 0), Complex(0, 1)};
  CHECK_FALSE(curve_is_simple(bowtie));
}

TEST_CASE("curve validation", "[core]") {
  JordanCurveApprox two;
  two.vertices = {Complex(0, 0), Complex(1, 0)};
  CHECK_THROWS_AS(two.validate(), std::invalid_argument);

  JordanCurveApprox dup;
  dup.vertices = {Complex(0, 0), Complex(0, 0), Complex(1, 0)};
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);
}

TEST_CASE("lambda grids", "[core]") {
  auto real = lambda_grid_real(-0.9, 0.9, 19);
  real.validate();
  CHECK(real.samples.size() == 19);
  bool has_zero = false;
  for (Complex s : real.samples) has_zero |= (s == Complex(0, 0));
  CHECK(has_zero);

  auto even = lambda_grid_real(-0.8, 0.8, 16);  // spacing misses 0: gets appended
  even.validate();
  CHECK(even.samples.size() == 17);

  auto polar = lambda_grid_polar({0.3, 0.6}, 16);
  polar.validate();
  CHECK(polar.samples.size() == 1 + 2 * 16);

  LambdaGrid bad;
  bad.samples = {Complex(0, 0), Complex(1.2, 0)};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  LambdaGrid no_zero;
  no_zero.samples = {Complex(0.5, 0)};
  CHECK_THROWS_AS(no_zero.validate(), std::invalid_argument);
}

TEST_CASE("point cloud validation", "[core]") {
  PointCloud empty;
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
  PointCloud inf;
  inf.points = {SpherePoint::infinity().value};
  CHECK_THROWS_AS(inf.validate(), std::invalid_argument);
}

TEST_CASE("seeded streams are stable and independent", "[core]") {
  SeededStream a(1, 0), b(1, 0), c(1, 1), d(2, 0);
  auto va = a.next_u64();
  CHECK(va == b.next_u64());
  CHECK(va != c.next_u64());
  CHECK(va != d.next_u64());
  SeededStream u(9, 4);
  for (int k = 0; k < 1000; ++k) {
    double x = u.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}
