#pragma once

#include <string_view>

#include "bgkmix/core/field.hpp"
#include "bgkmix/core/grid.hpp"
#include "bgkmix/core/moments.hpp"
#include "bgkmix/core/params.hpp"

namespace bgkmix {

/// How the Maxwellian parameters move during one relaxation step.
///  moment_ode: the closed moment system is integrated across the step and the
///              kinetic source is sampled at three Gauss points (second order
///              in dt and better).
///  frozen:     parameters held at their step-start values (first order).
/// Both update f by e^{-A dt} f + (nonnegative weights) x (Maxwellians), so
/// positivity and per-species mass hold for any dt.
enum class RelaxationScheme { moment_ode, frozen };

std::string_view to_string(RelaxationScheme scheme) noexcept;
RelaxationScheme parse_relaxation_scheme(std::string_view text);

struct RelaxationOptions {
  RelaxationScheme scheme = RelaxationScheme::moment_ode;
  /// Largest admissible relaxation exponent (A dt) before StepSizeError.
  double max_exponent = 50.0;
  double n_floor = kDefaultVacuumFloor;
  /// Upper bound on (fastest rate) x (RK4 substep) for the moment system.
  double ode_resolution = 0.02;
};

struct RelaxationReport {
  /// Largest A dt over nodes and species (and B dt for the model b M field).
  double max_exponent = 0.0;
  /// Smallest density seen at step start.
  double min_density = 0.0;
};

/// One relaxation step of length dt at every spatial node. Dispatches on
/// state.model. Throws StepSizeError, VacuumError, NegativeTemperatureError.
RelaxationReport relax(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid, double dt,
                       const RelaxationOptions& options = {}, int threads = 1);

/// Model-checked entry points; throw ConfigError on a state of the other model.
RelaxationReport relax_step_model_a(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid,
                                    double dt, const RelaxationOptions& options = {}, int threads = 1);
RelaxationReport relax_step_model_b(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid,
                                    double dt, const RelaxationOptions& options = {}, int threads = 1);

/// Relaxation rates of species k at one node: R_self = nu~_kk chi_k and
/// R_cross = nu~_kj chi_j with mass fractions chi = n / (n_1 + n_2).
struct RelaxationRates {
  double self = 0.0;
  double cross = 0.0;
  double total() const noexcept { return self + cross; }
};
RelaxationRates relaxation_rates(const PhysicalModel& model, int k, double n1, double n2) noexcept;

}  // namespace bgkmix
