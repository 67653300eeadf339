#pragma once

#include <vector>

#include "bgkmix/core/field.hpp"
#include "bgkmix/core/grid.hpp"

namespace bgkmix {

struct AdvectionOptions {
  /// Number of Lagrange points (even, 2..12), centred on the departure cell.
  int stencil = 6;
  /// Blend each periodic line with linear interpolation where the high-order
  /// result would go negative. Off for signed data.
  bool limit_positivity = true;
};

/// Validates the options; throws ConfigError.
void check_advection_options(const AdvectionOptions& options);

/// In place, f(x, v, eta) <- f(x - v dt, v, eta) on the periodic box, one
/// dimension at a time. Shifts that land on nodes are exact index copies.
/// Interpolation weights sum to one, so per-line sums are conserved.
void advect(DistributionField& f, const SpeciesGrid& species_grid, const SpatialGrid& space, double dt,
            const AdvectionOptions& options = {}, int threads = 1);

/// Copying form of advect.
DistributionField advected(const DistributionField& f, const SpeciesGrid& species_grid, const SpatialGrid& space,
                           double dt, const AdvectionOptions& options = {}, int threads = 1);

/// Same transport for data laid out [x][v][c] with `columns` values per
/// (x, v); used for velocity-resolved scalars such as rates and marginals.
void advect_columns(std::vector<double>& data, std::size_t columns, const SpeciesGrid& species_grid,
                    const SpatialGrid& space, double dt, const AdvectionOptions& options = {}, int threads = 1);

/// Lagrange weights for the value at offset -theta (0 < theta < 1) from nodes
/// -stencil/2 .. stencil/2 - 1.
std::vector<double> lagrange_weights(double theta, int stencil);

}  // namespace bgkmix
