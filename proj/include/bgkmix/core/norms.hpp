#pragma once

#include "bgkmix/core/field.hpp"
#include "bgkmix/core/grid.hpp"

namespace bgkmix {

/// N_q(f) = max over all nodes of |xi|^q f(x, xi), xi = (v, eta) over the
/// species' active internal components.
double weighted_sup_norm(const DistributionField& f, const SpeciesGrid& grid, double q);

/// Weighted L1 norm sum w (1 + |xi|^2) |a - b| dx dxi. b may be empty (treated as 0).
double weighted_l1_distance(const DistributionField& a, const DistributionField* b, const SpeciesGrid& grid,
                            double cell_volume);

}  // namespace bgkmix
