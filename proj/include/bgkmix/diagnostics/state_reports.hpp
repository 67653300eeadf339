#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "bgkmix/core/field.hpp"
#include "bgkmix/core/grid.hpp"
#include "bgkmix/core/moments.hpp"
#include "bgkmix/core/params.hpp"
#include "bgkmix/core/small_vector.hpp"

namespace bgkmix {

/// Moments of both species at every node with Theta attached: model a from
/// state.theta, model b from the internal temperature of the M field.
std::array<std::vector<MomentSet>, 2> state_moments(const KineticState& state, const PhysicalModel& model,
                                                    const PhaseSpaceGrid& grid, int threads = 1);

struct ConservationTotals {
  double time = 0.0;
  /// \int n_k dx per species.
  std::array<double, 2> mass{};
  /// sum_k m_k \int n_k u_k dx.
  VelocityVector momentum;
  /// sum_k m_k \int\int |v| f_k; scale for momentum drifts that start near zero.
  double momentum_scale = 0.0;
  /// sum_k (m_k/2) \int\int (|v|^2 + |eta|^2) f_k, the conserved total.
  double energy = 0.0;
  /// Model a only: sum_k (l_k/2) \int n_k Theta_k dx. Not conserved by itself;
  /// reported next to the total, not added to it.
  double theta_energy = 0.0;
};

struct ConservationReport {
  ConservationTotals totals;
  ConservationTotals reference;
  /// |mass - reference| / reference per species.
  std::array<double, 2> mass_drift{};
  /// Componentwise momentum - reference.
  VelocityVector momentum_delta;
  /// |momentum - reference| / reference momentum_scale.
  double momentum_drift = 0.0;
  /// |energy - reference| / reference energy.
  double energy_drift = 0.0;
  double theta_energy_delta = 0.0;
};

ConservationTotals conservation_totals(const KineticState& state, const PhysicalModel& model,
                                       const PhaseSpaceGrid& grid, int threads = 1);

/// Totals of state and drifts against reference (the state itself when null).
ConservationReport conservation_report(const KineticState& state, const PhysicalModel& model,
                                       const PhaseSpaceGrid& grid, const ConservationTotals* reference = nullptr,
                                       int threads = 1);

struct PositivityReport {
  bool pass = true;
  double min_value = 0.0;
  /// Location of the minimum: species (0-based), field ("f" or "M") and node.
  int species = 0;
  std::string field = "f";
  std::size_t ix = 0;
  std::size_t iv = 0;
  std::size_t ie = 0;
};

/// Minimum over f_1, f_2 and, for model b, M_1, M_2. The signed g_k that
/// model a carries under kinetic Theta transport is not checked.
PositivityReport positivity_check(const KineticState& state);

struct EntropyReport {
  double time = 0.0;
  /// H = sum_k \int\int f_k ln f_k; nodes with f < 1e-300 contribute 0.
  double H = 0.0;
  std::array<double, 2> per_species{};
};

EntropyReport entropy_report(const KineticState& state, const PhaseSpaceGrid& grid);

}  // namespace bgkmix
