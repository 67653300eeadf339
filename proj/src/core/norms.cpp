#include "bgkmix/core/norms.hpp"

#include <cmath>
#include <vector>

#include "bgkmix/core/errors.hpp"

namespace bgkmix {
namespace {

std::vector<double> squared_speeds(const SpeciesGrid& grid, bool velocity) {
  const std::size_t count = velocity ? grid.velocity_size : grid.internal_size;
  const int dims = velocity ? grid.dim : grid.internal_dof;
  std::vector<double> out(count, 0.0);
  for (std::size_t i = 0; i < count; ++i)
    for (int a = 0; a < dims; ++a) {
      const double c = velocity ? grid.velocity(i, a) : grid.internal(i, a);
      out[i] += c * c;
    }
  return out;
}

}  // namespace

double weighted_sup_norm(const DistributionField& f, const SpeciesGrid& grid, double q) {
  if (q < 0.0) throw ConfigError("weighted_sup_norm: q must be non-negative");
  const auto v2 = squared_speeds(grid, true);
  const auto e2 = squared_speeds(grid, false);
  double best = 0.0;
  for (std::size_t ix = 0; ix < f.space_size(); ++ix)
    for (std::size_t iv = 0; iv < f.velocity_size(); ++iv)
      for (std::size_t ie = 0; ie < f.internal_size(); ++ie) {
        const double value = f(ix, iv, ie);
        if (value == 0.0) continue;
        const double weight = q == 0.0 ? 1.0 : std::pow(v2[iv] + e2[ie], 0.5 * q);
        best = std::max(best, weight * std::abs(value));
      }
  return best;
}

double weighted_l1_distance(const DistributionField& a, const DistributionField* b, const SpeciesGrid& grid,
                            double cell_volume) {
  const auto v2 = squared_speeds(grid, true);
  const auto e2 = squared_speeds(grid, false);
  double total = 0.0;
  for (std::size_t ix = 0; ix < a.space_size(); ++ix)
    for (std::size_t iv = 0; iv < a.velocity_size(); ++iv) {
      double row = 0.0;
      for (std::size_t ie = 0; ie < a.internal_size(); ++ie) {
        const double diff = b ? a(ix, iv, ie) - (*b)(ix, iv, ie) : a(ix, iv, ie);
        row += (1.0 + v2[iv] + e2[ie]) * std::abs(diff);
      }
      total += row;
    }
  return total * grid.weight() * cell_volume;
}

}  // namespace bgkmix
