#pragma once

#include <array>
#include <string_view>

#include "bgkmix/core/field.hpp"
#include "bgkmix/core/grid.hpp"
#include "bgkmix/core/params.hpp"
#include "bgkmix/core/small_vector.hpp"

namespace bgkmix {

enum class InitialKind {
  /// Two-temperature Maxwellian with sinusoidal perturbations of n, u, T.
  perturbed_maxwellian,
  /// Sum of two Maxwellians shifted by +-beam_speed along the first axis.
  two_beam,
  /// Single-temperature equilibrium with internal offset |w|^2 = 2 p_inf / (m n).
  fixed_offset,
};

std::string_view to_string(InitialKind kind) noexcept;
InitialKind parse_initial_kind(std::string_view text);

struct SpeciesInitial {
  double n = 1.0;
  /// Bulk velocity (size d; missing entries are zero).
  VelocityVector u;
  /// Mean internal variable over active components (size l; missing entries are zero).
  InternalVector eta_bar;
  double T_trans = 1.0;
  double T_rot = 1.0;
  /// Initial Theta_k; <= 0 selects T_rot (so Lambda_k = T_trans).
  double theta = 0.0;
  /// Relative amplitudes for n and both temperatures, absolute for u (first axis).
  double n_amplitude = 0.0;
  double u_amplitude = 0.0;
  double T_amplitude = 0.0;
  /// Wave number along every axis and phase of the perturbation.
  int mode = 1;
  double phase = 0.0;
  /// two_beam: beam offset along the first axis and weight of the + beam.
  double beam_speed = 1.0;
  double beam_fraction = 0.5;
  /// fixed_offset: p_inf and the direction of w (size l; empty means first axis).
  double p_inf = 0.0;
  InternalVector w_direction;
};

struct InitialCondition {
  InitialKind kind = InitialKind::perturbed_maxwellian;
  std::array<SpeciesInitial, 2> species{};
};

/// Builds f_k, Theta_k (model a) or M_k (model b) on the grid. Throws
/// DomainError / NegativeTemperatureError on inadmissible data.
KineticState make_initial_state(const InitialCondition& ic, const PhysicalModel& model, const PhaseSpaceGrid& grid,
                                int threads = 1);

}  // namespace bgkmix
