// Minimal library walkthrough: build a candidate cloud, run the diameter
// ladder, and compare against the closed form for the shape.

#include <cstdio>

#include "capmotion/capacity.hpp"
#include "capmotion/geometry.hpp"
#include "capmotion/reference.hpp"

int main() {
  using namespace capmotion;

  auto segment = gen_segment(4096, Complex(-2, 0), Complex(2, 0));
  auto report = fekete_capacity(segment, {8, 12, 16, 24, 32, 48, 64});

  std::printf("diameter ladder for a length-4 segment:\n");
  for (const auto& [n, delta] : report.diameters) std::printf("  n=%3zu  delta=%.6f\n", n, delta);
  std::printf("raw estimate          %.6f\n", report.raw_estimate);
  std::printf("extrapolated estimate %.6f\n", report.extrapolated);
  std::printf("closed form           %.6f\n", reference_capacity_segment(4.0));
  return 0;
}
