#pragma once

#include <utility>

#include "bgkmix/core/moments.hpp"
#include "bgkmix/core/params.hpp"
#include "bgkmix/core/small_vector.hpp"

namespace bgkmix {

/// Interspecies exchange quantities at one spatial node. eta_12 / eta_21 are
/// restricted to the active components of species 1 / 2 (sizes l1 / l2).
struct ExchangeSet {
  double n12 = 0.0;
  double n21 = 0.0;
  VelocityVector u12;
  VelocityVector u21;
  InternalVector eta12;
  InternalVector eta21;
  double Lambda12 = 0.0;
  double Lambda21 = 0.0;
  double Theta12 = 0.0;
  double Theta21 = 0.0;
  double T12 = 0.0;
  double T21 = 0.0;
};

/// u12 = delta u1 + (1-delta) u2, u21 = u2 - (m1/m2) eps (1-delta)(u2 - u1).
std::pair<VelocityVector, VelocityVector> exchange_velocities(const VelocityVector& u1, const VelocityVector& u2,
                                                              const MixtureCouplingParams& params,
                                                              const SpeciesParams& species);

/// Embeds an l_k-vector into R^M by zero padding outside the active components.
InternalVector embed_internal(const InternalVector& active, const Species& species, int internal_space_dim);
/// Restricts an R^M vector to the active components of a species.
InternalVector restrict_internal(const InternalVector& full, const Species& species);

/// Mixed internal means on R^M, restricted to each species' active components.
std::pair<InternalVector, InternalVector> exchange_eta(const InternalVector& eta1, const InternalVector& eta2,
                                                       const MixtureCouplingParams& params,
                                                       const SpeciesParams& species);

/// Full exchange set from the two species' moments (Lambda/Theta must be set).
/// Throws NegativeTemperatureError if an exchange temperature is not positive.
ExchangeSet exchange_temperatures(const MomentSet& m1, const MomentSet& m2, const MixtureCouplingParams& params,
                                  const SpeciesParams& species, int dim);

/// Same formulas without the positivity check; used by randomized sweeps and
/// the reference ODE so that failures can be counted instead of thrown.
ExchangeSet exchange_quantities(const MomentSet& m1, const MomentSet& m2, const MixtureCouplingParams& params,
                                const SpeciesParams& species, int dim) noexcept;

}  // namespace bgkmix
