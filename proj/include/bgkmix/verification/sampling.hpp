#pragma once

#include <random>

#include "bgkmix/core/moments.hpp"
#include "bgkmix/core/params.hpp"

namespace bgkmix::verification {

/// Uniform sample from the admissible coupling region for the given species.
MixtureCouplingParams random_admissible(std::mt19937_64& rng, const SpeciesParams& species, int dim);

/// A random exchange problem: species with 1..3 internal dof on random
/// components of R^3, admissible coupling, and two moment sets with Lambda and
/// Theta attached.
struct ExchangeCase {
  int dim = 1;
  SpeciesParams species;
  MixtureCouplingParams params;
  MomentSet m1, m2;
};
ExchangeCase random_exchange_case(std::mt19937_64& rng);

/// Relative residuals of the two closure identities of an exchange set:
/// eps m1 (u12 - u1) + m2 (u21 - u2) (max over components) and the matching
/// energy sum, each scaled by the size of the terms.
struct ClosureResiduals {
  double momentum = 0.0;
  double energy = 0.0;
  bool positive = true;  ///< every exchange temperature > 0
};
ClosureResiduals closure_residuals(const ExchangeCase& c);

}  // namespace bgkmix::verification
