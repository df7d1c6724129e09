#include <catch2/catch_amalgamated.hpp>

#include "capmotion/harmonic.hpp"
#include "oracles.hpp"

using namespace capmotion;
using Catch::Approx;

TEST_CASE("boundary partitions index segments", "[harmonic]") {
  auto p = BoundaryPartition::equal_cells(512, 64);
  REQUIRE(p.cells() == 64);
  CHECK(p.cell_of_segment(0) == 0);
  CHECK(p.cell_of_segment(7) == 0);
  CHECK(p.cell_of_segment(8) == 1);
  CHECK(p.cell_of_segment(511) == 63);
  p.validate(512);
  CHECK_THROWS_AS(BoundaryPartition::equal_cells(8, 0), std::invalid_argument);
  CHECK_THROWS_AS(BoundaryPartition::equal_cells(8, 9), std::invalid_argument);
}

TEST_CASE("symmetric domains spread measure evenly", "[harmonic]") {
  auto disk = curve_from_cloud(gen_circle(256, 1.0));
  auto cells = BoundaryPartition::equal_cells(256, 8);
  auto mv = wos_harmonic_measure(disk, Complex(0, 0), cells, 20000, 2e-3, 42);
  mv.validate();
  for (double w : mv.weights) CHECK(std::abs(w - 0.125) < 0.01);

  JordanCurveApprox square;
  square.vertices = {Complex(1, 1), Complex(-1, 1), Complex(-1, -1), Complex(1, -1)};
  auto sides = BoundaryPartition::equal_cells(4, 4);
  auto mv2 = wos_harmonic_measure(square, Complex(0, 0), sides, 20000, 2e-3, 43);
  for (double w : mv2.weights) CHECK(std::abs(w - 0.25) < 0.01);
}

TEST_CASE("off-center disk measure matches the kernel integral", "[harmonic][oracle]") {
  auto disk = curve_from_cloud(gen_circle(512, 1.0));
  // Two cells: right semicircle (wrapping) and left semicircle.
  BoundaryPartition halves;
  halves.cell_start = {128, 384};  // segment 128 starts the left half at angle pi/2
  auto mv = wos_harmonic_measure(disk, Complex(0.5, 0), halves, 40000, 2e-3, 44);
  double left = oracles::disk_arc_measure(Complex(0.5, 0), kPi / 2.0, 3.0 * kPi / 2.0);
  CHECK(std::abs(mv.weights[0] - left) < 0.01);
  CHECK(std::abs(mv.weights[1] - (1.0 - left)) < 0.01);
}

TEST_CASE("walk-on-spheres input validation", "[harmonic]") {
  auto disk = curve_from_cloud(gen_circle(64, 1.0));
  auto cells = BoundaryPartition::equal_cells(64, 8);
  CHECK_THROWS_AS(wos_harmonic_measure(disk, Complex(3, 0), cells, 100, 1e-3, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(wos_harmonic_measure(disk, Complex(0.9999, 0), cells, 100, 1e-2, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(wos_harmonic_measure(disk, Complex(0, 0), cells, 100, 0.0, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(wos_harmonic_measure(disk, Complex(0, 0), cells, 0, 1e-3, 0),
                  std::invalid_argument);
}

TEST_CASE("capped walks are counted and renormalized", "[harmonic]") {
  auto disk = curve_from_cloud(gen_circle(64, 1.0));
  auto cells = BoundaryPartition::equal_cells(64, 4);
  auto mv = wos_harmonic_measure(disk, Complex(0, 0), cells, 500, 1e-6, 7, 0, /*max_steps=*/3);
  mv.validate();  // weights still sum to 1 over credited walks
  CHECK(mv.lost_walks > 0);
  std::uint64_t total = 0;
  for (auto h : mv.hits) total += h;
  CHECK(total + mv.lost_walks == 500);
}

TEST_CASE("walk results are worker-count independent", "[harmonic]") {
  auto disk = curve_from_cloud(gen_circle(128, 1.0));
  auto cells = BoundaryPartition::equal_cells(128, 16);
  auto one = wos_harmonic_measure(disk, Complex(0.2, 0.1), cells, 4000, 2e-3, 99, 1);
  auto four = wos_harmonic_measure(disk, Complex(0.2, 0.1), cells, 4000, 2e-3, 99, 4);
  CHECK(one.hits == four.hits);
  CHECK(one.lost_walks == four.lost_walks);
}

TEST_CASE("exact arc measure equals angle increments", "[harmonic]") {
  auto quarters = external_measure_arcs({0.0, 0.25, 0.5, 0.75});
  quarters.validate();
  REQUIRE(quarters.weights.size() == 4);
  for (double w : quarters.weights) CHECK(w == Approx(0.25));

  auto two = external_measure_arcs({0.0, 0.1, 1.0});
  REQUIRE(two.weights.size() == 2);
  CHECK(two.weights[0] == Approx(0.1));
  CHECK(two.weights[1] == Approx(0.9));

  CHECK_THROWS_AS(external_measure_arcs({0.5, 0.25}), std::invalid_argument);
  CHECK_THROWS_AS(external_measure_arcs({0.0, 1.5}), std::invalid_argument);
}

TEST_CASE("merging cells adds their exact measures", "[harmonic][property]") {
  auto fine = external_measure_arcs({0.0, 0.125, 0.25, 0.5, 0.625, 0.75});
  auto coarse = external_measure_arcs({0.0, 0.25, 0.625});
  CHECK(coarse.weights[0] == Approx(fine.weights[0] + fine.weights[1]));
  CHECK(coarse.weights[1] == Approx(fine.weights[2] + fine.weights[3]));
  CHECK(coarse.weights[2] == Approx(fine.weights[4] + fine.weights[5]));
}

TEST_CASE("measure vector validation", "[harmonic]") {
  MeasureVector bad;
  bad.weights = {0.6, 0.6};
  bad.exact = true;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  MeasureVector neg;
  neg.weights = {1.5, -0.5};
  neg.exact = true;
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);

  MeasureVector counts;
  counts.weights = {0.5, 0.5};
  counts.hits = {5, 5};
  counts.n_walks = 11;  // one walk unaccounted
  CHECK_THROWS_AS(counts.validate(), std::invalid_argument);
  counts.lost_walks = 1;
  CHECK_NOTHROW(counts.validate());
}
