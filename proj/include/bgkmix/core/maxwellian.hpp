#pragma once

#include <array>
#include <span>
#include <vector>

#include "bgkmix/core/field.hpp"
#include "bgkmix/core/grid.hpp"
#include "bgkmix/core/mixture.hpp"
#include "bgkmix/core/moments.hpp"
#include "bgkmix/core/params.hpp"

namespace bgkmix {

/// Parameters of a two-temperature Maxwellian.
struct MaxwellianParams {
  double n = 0.0;
  VelocityVector u;
  InternalVector eta_bar;
  double Lambda = 1.0;
  double Theta = 1.0;
};

/// Separable discrete Maxwellian: G(iv, ie) = scale * velocity[iv] * internal[ie],
/// renormalized so the discrete mass equals n.
struct SeparableMaxwellian {
  std::vector<double> velocity;
  std::vector<double> internal;
  double scale = 0.0;

  double operator()(std::size_t iv, std::size_t ie) const noexcept { return scale * velocity[iv] * internal[ie]; }
  /// out[iv * ne + ie] += coeff * G(iv, ie)
  void accumulate(std::span<double> out, double coeff) const noexcept;
  /// out[iv * ne + ie] = G(iv, ie)
  void write(std::span<double> out) const noexcept;
};

/// Builds the factor tables; throws DomainError if Lambda <= 0 or Theta <= 0 or
/// if the Maxwellian has no discrete mass on the grid.
SeparableMaxwellian make_separable(const MaxwellianParams& p, double mass, const SpeciesGrid& grid);

/// One-node field of G.
DistributionField maxwellian(const MaxwellianParams& p, const Species& species, const SpeciesGrid& grid);
/// Field over x with per-node parameters.
DistributionField maxwellian_field(const std::vector<MaxwellianParams>& params, const Species& species,
                                   const SpeciesGrid& grid, int threads = 1);

/// Single-temperature Maxwellian at T_equil of the moments.
MaxwellianParams equilibrium_params(const MomentSet& m);
DistributionField equilibrium_maxwellian(const MomentSet& m, const Species& species, const SpeciesGrid& grid);

/// M_k with the species' own n, u, eta_bar and Lambda, Theta.
MaxwellianParams species_params(const MomentSet& m);

/// Exchange Maxwellian parameters for species k (0 or 1): M_kj, and for
/// model b additionally the single-temperature M~_kj.
struct ExchangeMaxwellians {
  MaxwellianParams mixed;
  MaxwellianParams mixed_equilibrium;
};
ExchangeMaxwellians exchange_params(const ExchangeSet& x, int k);
std::array<DistributionField, 2> exchange_maxwellians(const ExchangeSet& x, const SpeciesParams& species,
                                                      const PhaseSpaceGrid& grid, ModelVariant model);

/// Equilibrium with a fixed internal offset eta_bar = w, |w|^2 = 2 p_inf / (m n),
/// pointing along w_direction (normalized here; any non-zero vector of size l).
MaxwellianParams fixed_offset_params(double n, const VelocityVector& u, double T, const InternalVector& w_direction,
                                     double p_inf, const Species& species);
DistributionField fixed_offset_equilibrium(double n, const VelocityVector& u, double T,
                                           const InternalVector& w_direction, double p_inf, const Species& species,
                                           const SpeciesGrid& grid);

}  // namespace bgkmix
