#include <catch2/catch_amalgamated.hpp>

#include "capmotion/config.hpp"
#include "capmotion/io.hpp"
#include "capmotion/svg.hpp"

using namespace capmotion;
using Catch::Approx;

TEST_CASE("cloud CSV round trip", "[io]") {
  auto cloud = gen_circle(16, 1.25, Complex(0.5, -0.25));
  auto csv = cloud_to_csv(cloud, "deadbeef00000000");
  auto back = cloud_from_csv(csv);
  REQUIRE(back.size() == cloud.size());
  for (std::size_t k = 0; k < cloud.size(); ++k) CHECK(back.points[k] == cloud.points[k]);
  CHECK(csv.substr(0, 1) == "#");
  CHECK(csv.find("re,im") != std::string::npos);
}

TEST_CASE("cloud JSON round trip keeps metadata", "[io]") {
  auto cloud = gen_segment(8, Complex(-2, 0), Complex(2, 0));
  auto j = cloud_to_json(cloud);
  auto back = cloud_from_json(j);
  CHECK(back.label == cloud.label);
  CHECK(back.generator_params == cloud.generator_params);
  REQUIRE(back.size() == cloud.size());
  for (std::size_t k = 0; k < cloud.size(); ++k) CHECK(back.points[k] == cloud.points[k]);
}

TEST_CASE("capacity report serialization", "[io]") {
  CapacityReport rep = capacity_from_diameters({{4, 1.5}, {8, 1.3}, {16, 1.2}});
  auto j = capacity_report_to_json(rep);
  CHECK(j["raw"].get<double>() == Approx(1.2));
  CHECK(j["diameters"].size() == 3);
  CHECK(j["stats"]["monotone"].get<bool>());
}

TEST_CASE("sweep CSV round trip with gaps", "[io]") {
  SweepTable t;
  t.motion_id = "stretch";
  t.set_id = "circle";
  t.config_hash = "0123456789abcdef";
  SweepRow a;
  a.lambda = Complex(-0.5, 0);
  a.capacity = 1.01;
  a.capacity_err = 0.02;
  a.area = 3.1;
  SweepRow b;
  b.lambda = Complex(0, 0);
  b.capacity = 1.0;
  b.capacity_err = 0.01;
  b.boxdim = 1.002;
  SweepRow c;
  c.lambda = Complex(0.5, 0);
  c.failed = true;
  t.rows = {a, b, c};

  auto csv = sweep_to_csv(t);
  auto back = sweep_from_csv(csv);
  REQUIRE(back.rows.size() == 3);
  CHECK(back.config_hash == t.config_hash);
  CHECK(back.rows[0].area.has_value());
  CHECK_FALSE(back.rows[0].boxdim.has_value());
  CHECK(*back.rows[0].area == Approx(3.1));
  CHECK(back.rows[1].boxdim.has_value());
  CHECK(back.rows[2].failed);
  CHECK(sweep_to_csv(back) == csv);  // byte-stable round trip
}

TEST_CASE("config canonicalization and hashing", "[io]") {
  RunConfig a = parse_config_text("seed = 7\nmotion = \"scaling:beta=0.5\"\n# comment\n");
  CHECK(a.seed() == 7);
  CHECK(a.get("motion") == "scaling:beta=0.5");

  RunConfig b = parse_config_text(config_to_text(a));
  CHECK(a.entries == b.entries);
  CHECK(a.config_hash() == b.config_hash());

  RunConfig c = a;
  c.set("seed", "8");
  CHECK(a.config_hash() != c.config_hash());

  CHECK_THROWS_AS(parse_config_text("not an assignment\n"), std::invalid_argument);
}

TEST_CASE("complex literals", "[io]") {
  CHECK(parse_complex_literal("1") == Complex(1, 0));
  CHECK(parse_complex_literal("-0.5") == Complex(-0.5, 0));
  CHECK(parse_complex_literal("2i") == Complex(0, 2));
  CHECK(parse_complex_literal("1+0.5i") == Complex(1, 0.5));
  CHECK(parse_complex_literal("0.25-1i") == Complex(0.25, -1));
  CHECK(parse_complex_literal("-i") == Complex(0, -1));
  CHECK(parse_complex_literal("1e-3") == Complex(1e-3, 0));
  CHECK_THROWS_AS(parse_complex_literal(""), std::invalid_argument);
}

TEST_CASE("spec parsing", "[io]") {
  auto m = parse_motion_spec("scaling:beta=0.25");
  CHECK(m.name == "scaling");
  CHECK(m.map_point(Complex(0.4, 0), Complex(1, 0)) == Complex(1.1, 0));

  auto set = parse_set_spec("circle:n=64,r=2");
  CHECK(set.size() == 64);
  CHECK(std::abs(set.points[0] - Complex(2, 0)) < 1e-15);

  auto seg = parse_set_spec("segment:n=16,a=-2,b=2");
  CHECK(seg.size() == 16);

  auto grid = parse_grid_spec("real:-0.8:0.8:17");
  CHECK(grid.samples.size() == 17);
  auto polar = parse_grid_spec("polar:0.3,0.6:16");
  CHECK(polar.samples.size() == 33);

  CHECK_THROWS_AS(parse_motion_spec("warp"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid_spec("spiral:1:2"), std::invalid_argument);
}

TEST_CASE("svg plots are deterministic and timestamp-free", "[io]") {
  std::vector<double> xs = {-0.5, 0.0, 0.5};
  std::vector<double> ys = {1.0, 0.9, 1.1};
  auto svg = svg_line_plot(xs, ys, "lambda", "capacity", "feedc0de00000000");
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("feedc0de00000000") != std::string::npos);
  CHECK(svg.find("time") == std::string::npos);
  CHECK(svg == svg_line_plot(xs, ys, "lambda", "capacity", "feedc0de00000000"));

  auto dot = svg_line_plot({0.25}, {2.0}, "x", "y", "hash");
  CHECK(dot.find("<circle") != std::string::npos);
  CHECK(dot.find("<polyline") == std::string::npos);

  CHECK_THROWS_AS(svg_line_plot({}, {}, "x", "y", "h"), std::invalid_argument);
  CHECK_THROWS_AS(svg_line_plot({1.0}, {1.0, 2.0}, "x", "y", "h"), std::invalid_argument);
}

TEST_CASE("welding and dimension CSVs carry their headers", "[io]") {
  WeldingTable t;
  t.external_angles = {0.0, 0.5};
  t.internal_angles = {0.0, 0.5};
  t.increments = {0.5, 0.5};
  t.mc_error = {0.01, 0.01};
  t.n_walks = 100;
  auto csv = welding_to_csv(t, "aaaa000000000000");
  CHECK(csv.find("theta,phi,delta,mc_error") != std::string::npos);
  CHECK(csv.find("config_hash=aaaa000000000000") != std::string::npos);

  DimensionRow row;
  row.c = -2.5;
  row.boxdim = 0.71;
  row.boxdim_err = 0.01;
  row.capacity = 1.0;
  row.samples = 1000;
  auto dcsv = dimension_table_to_csv({row}, "bbbb000000000000");
  CHECK(dcsv.find("c,boxdim,boxdim_err,capacity,samples") != std::string::npos);
}
