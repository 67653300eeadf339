#pragma once

#include "bgkmix/core/grid.hpp"
#include "bgkmix/core/params.hpp"
#include "bgkmix/core/small_vector.hpp"

namespace bgkmix {

/// Energy flux of the fixed-offset equilibrium (internal mean w with
/// |w|^2 = 2 p_inf / (m n)), measured by quadrature along the first axis.
struct EquationOfStateReport {
  int dim = 1;
  int internal_dof = 1;
  double p_inf = 0.0;
  /// (m/2) \int v_1 (|v|^2 + |eta|^2) G.
  double energy_flux = 0.0;
  /// (energy_flux - (m/2) n |u|^2 u_1) / u_1.
  double flux_coefficient = 0.0;
  /// (5 + l)/2 n T + p_inf, the law in three velocity dimensions.
  double theorem_coefficient = 0.0;
  /// (d + 2 + l)/2 n T + p_inf, the Gaussian moment in d velocity dimensions.
  double dimensional_coefficient = 0.0;
  /// theorem_coefficient * u_1 + (m/2) n |u|^2 u_1.
  double theorem_flux = 0.0;
  /// m \int (v_1 - u_1)^2 G, the pressure n T behind the momentum flux.
  double pressure = 0.0;
  /// (m/2) \int |eta|^2 G and its offset from (l/2) n T.
  double internal_energy = 0.0;
  double internal_offset = 0.0;
  /// |flux_coefficient - theorem_coefficient| and against the d-dimensional law.
  double theorem_error = 0.0;
  double dimensional_error = 0.0;
};

/// u must have d entries with u_1 != 0; grid is the velocity/internal grid of
/// a species with the given internal_dof. Throws DomainError on p_inf < 0, u_1 = 0
/// or a grid that does not match.
EquationOfStateReport equation_of_state_experiment(double n, const VelocityVector& u, double T, double p_inf,
                                                   const Species& species, const SpeciesGrid& grid);

}  // namespace bgkmix
