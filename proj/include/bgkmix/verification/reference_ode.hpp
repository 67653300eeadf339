#pragma once

#include <array>
#include <vector>

#include "bgkmix/core/moments.hpp"
#include "bgkmix/core/params.hpp"

namespace bgkmix::verification {

/// Space-homogeneous macroscopic state of one species for the reference ODE.
/// For model b the M field starts as the Maxwellian with (n, u, eta_bar, Lambda, Theta).
struct ReferenceSpecies {
  double n = 1.0;
  VelocityVector u;
  InternalVector eta_bar;
  double T_trans = 1.0;
  double T_rot = 1.0;
  double Theta = 1.0;
};

struct ReferenceSample {
  double time = 0.0;
  /// Full moment sets (Lambda, Theta, T_equil attached).
  std::array<MomentSet, 2> species;
};

struct ReferenceOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
};

/// Integrates the closed moment equations of the homogeneous two-species
/// system in conserved variables (n u, n eta_bar, translational and internal
/// energy, n Theta or the M-field moments) with adaptive Dormand-Prince, and
/// samples at `times` (ascending, >= 0).
std::vector<ReferenceSample> reference_relaxation(const PhysicalModel& model,
                                                  const std::array<ReferenceSpecies, 2>& initial,
                                                  const std::vector<double>& times,
                                                  const ReferenceOptions& options = {});

}  // namespace bgkmix::verification
