#include "bgkmix/diagnostics/equation_of_state.hpp"

#include <cmath>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/maxwellian.hpp"

namespace bgkmix {

EquationOfStateReport equation_of_state_experiment(double n, const VelocityVector& u, double T, double p_inf,
                                                   const Species& species, const SpeciesGrid& grid) {
  if (p_inf < 0.0) throw DomainError("p_inf must be non-negative");
  if (static_cast<int>(u.size()) != grid.dim) throw DomainError("u must have one entry per velocity axis");
  if (u[0] == 0.0) throw DomainError("the flux coefficient needs a non-zero bulk velocity along the first axis");
  if (grid.internal_dof != species.internal_dof) throw DomainError("grid and species disagree on internal_dof");

  InternalVector direction(static_cast<std::size_t>(species.internal_dof), 0.0);
  direction[0] = 1.0;
  const MaxwellianParams p = fixed_offset_params(n, u, T, direction, p_inf, species);
  const SeparableMaxwellian G = make_separable(p, species.mass, grid);

  // G is a product of a velocity and an internal table, so every integrand
  // splits into products of one-table sums.
  double v0 = 0.0, v1 = 0.0, v3 = 0.0, vp = 0.0;
  for (std::size_t iv = 0; iv < grid.velocity_size; ++iv) {
    const double g = G.velocity[iv];
    double speed2 = 0.0;
    for (int a = 0; a < grid.dim; ++a) speed2 += grid.velocity(iv, a) * grid.velocity(iv, a);
    const double v = grid.velocity(iv, 0);
    v0 += g;
    v1 += v * g;
    v3 += v * speed2 * g;
    vp += (v - u[0]) * (v - u[0]) * g;
  }
  double e0 = 0.0, e2 = 0.0;
  for (std::size_t ie = 0; ie < grid.internal_size; ++ie) {
    const double g = G.internal[ie];
    double eta2 = 0.0;
    for (int b = 0; b < grid.internal_dof; ++b) eta2 += grid.internal(ie, b) * grid.internal(ie, b);
    e0 += g;
    e2 += eta2 * g;
  }
  const double w = G.scale * grid.velocity_weight() * grid.internal_weight();
  const double m = species.mass;
  const double l = species.internal_dof;
  double u2 = 0.0;
  for (double x : u) u2 += x * x;

  EquationOfStateReport r;
  r.dim = grid.dim;
  r.internal_dof = species.internal_dof;
  r.p_inf = p_inf;
  r.energy_flux = 0.5 * m * w * (v3 * e0 + v1 * e2);
  r.flux_coefficient = (r.energy_flux - 0.5 * m * n * u2 * u[0]) / u[0];
  r.theorem_coefficient = 0.5 * (5.0 + l) * n * T + p_inf;
  r.dimensional_coefficient = 0.5 * (grid.dim + 2.0 + l) * n * T + p_inf;
  r.theorem_flux = r.theorem_coefficient * u[0] + 0.5 * m * n * u2 * u[0];
  r.pressure = m * w * vp * e0;
  r.internal_energy = 0.5 * m * w * v0 * e2;
  r.internal_offset = r.internal_energy - 0.5 * l * n * T;
  r.theorem_error = std::abs(r.flux_coefficient - r.theorem_coefficient);
  r.dimensional_error = std::abs(r.flux_coefficient - r.dimensional_coefficient);
  return r;
}

}  // namespace bgkmix
