#pragma once

#include <array>
#include <string_view>

#include "bgkmix/core/field.hpp"
#include "bgkmix/core/grid.hpp"
#include "bgkmix/core/params.hpp"
#include "bgkmix/core/small_vector.hpp"
#include "bgkmix/solver/advection.hpp"
#include "bgkmix/solver/relaxation.hpp"

namespace bgkmix {

/// Transport of the model a internal temperature.
///  bulk:    n_k Theta_k moves with the species bulk velocity (the left side
///           of the Theta balance law); the state carries only Theta_k(x).
///  kinetic: the state carries g_k = M_k - f_k in KineticState::maxwellian,
///           transported along v like f_k; Theta_k is read back from g_k + f_k.
///           This is the system solved by the mild (Picard) formulation.
enum class ThetaTransport { bulk, kinetic };

std::string_view to_string(ThetaTransport transport) noexcept;
ThetaTransport parse_theta_transport(std::string_view text);

struct SolverOptions {
  AdvectionOptions advection;
  ThetaTransport theta_transport = ThetaTransport::bulk;
  RelaxationOptions relaxation;
  /// A density below this sets StepReport::vacuum (the step still succeeds).
  double vacuum_warning = 1e-10;
  int threads = 1;
};

struct StepReport {
  double dt = 0.0;
  double max_exponent = 0.0;
  std::array<double, 2> mass_delta{};
  std::array<VelocityVector, 2> momentum_delta;
  std::array<double, 2> energy_delta{};
  /// min f_k (and M_k for model b) >= 0 after the step.
  bool positive = true;
  double min_value = 0.0;
  bool vacuum = false;
};

/// Free transport of everything the state carries: f_k, the model b M_k
/// fields and, for model a, either g_k (kinetic) or n_k Theta_k lifted to
/// velocity space as Theta_k(x) rho_k(x, v) with rho_k the eta-marginal of f_k.
void advect_state(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid, double dt,
                  const AdvectionOptions& options = {}, int threads = 1);

/// Model a: switches the state to kinetic Theta transport by attaching
/// g_k = M_k - f_k with M_k the Maxwellian of (n, u, eta_bar, Lambda, Theta).
void attach_theta_auxiliary(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid,
                            int threads = 1);

/// Strang step advect(dt/2) o relax(dt) o advect(dt/2). A model a state is
/// switched to the transport selected in the options before the step.
StepReport step(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid, double dt,
                const SolverOptions& options = {});

/// Smallest value of f_k (and M_k for model b; the signed g_k of model a is skipped).
double min_state_value(const KineticState& state) noexcept;

}  // namespace bgkmix
