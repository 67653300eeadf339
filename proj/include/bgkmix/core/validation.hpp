#pragma once

#include <string>
#include <vector>

#include "bgkmix/core/params.hpp"

namespace bgkmix {

/// One admissibility constraint: value must lie in [lower, upper]
/// (lower is exclusive when lower_open is set).
struct ConstraintCheck {
  std::string name;
  std::string description;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_open = false;
  bool passed = false;
};

struct ValidationReport {
  std::vector<ConstraintCheck> constraints;

  bool passed() const noexcept;
  /// Names of failed constraints with their admissible interval, one per line.
  std::string failures() const;
  const ConstraintCheck* find(const std::string& name) const noexcept;
};

/// Checks the admissible region for the exchange parameters:
///  - 0 < l1/(l1+l2) * eps <= 1
///  - delta, beta in [(eps m1/m2 - 1)/(1 + eps m1/m2), 1]
///  - 0 <= gamma <= (m1/d)(1-delta)[(1 + eps m1/m2) delta + 1 - eps m1/m2], same for gamma~ with beta, l1
///  - alpha in [0,1] and eps (1 - alpha) <= 1 (keeps Lambda_21 a convex combination)
ValidationReport validate_coupling(const MixtureCouplingParams& params, const SpeciesParams& species, int dim);

/// Upper end of the admissible gamma interval, (m1/d)(1-delta)[...].
double gamma_upper_bound(const MixtureCouplingParams& params, const SpeciesParams& species, int dim) noexcept;
double gamma_tilde_upper_bound(const MixtureCouplingParams& params, const SpeciesParams& species) noexcept;
/// Lower end of the admissible delta (and beta) interval.
double mixing_weight_lower_bound(const MixtureCouplingParams& params, const SpeciesParams& species) noexcept;

}  // namespace bgkmix
