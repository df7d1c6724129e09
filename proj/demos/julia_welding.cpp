// Samples a quasicircle Julia set by ray landing, then prints its boundary
// correspondence table summary and concentration indicator.

#include <cstdio>

#include "capmotion/julia.hpp"
#include "capmotion/welding.hpp"

int main() {
  using namespace capmotion;

  Complex c(0.15, 0.0);
  auto table = welding_table(c, 64, 20000, 0.0, 1);
  std::printf("welding table at c = %.2f (resolution %zu, %zu walks)\n", c.real(), table.size(),
              table.n_walks);
  std::printf("  identity distance      %.5f\n", ks_identity_distance(table));
  std::printf("  concentration (0.9)    %.4f\n", concentration_statistic(table, 0.9));
  std::printf("  lost walks             %zu\n", table.lost_walks);
  std::printf("first rows (theta -> phi):\n");
  for (std::size_t k = 0; k < 6; ++k)
    std::printf("  %.4f -> %.4f\n", table.external_angles[k], table.internal_angles[k]);
  return 0;
}
