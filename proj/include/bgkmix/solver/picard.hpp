#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "bgkmix/core/field.hpp"
#include "bgkmix/core/grid.hpp"
#include "bgkmix/core/params.hpp"
#include "bgkmix/solver/advection.hpp"

namespace bgkmix {

/// Which iterate's T_trans, T_rot enter Lambda_k^{n-1} = T_trans + (l/d)(T_rot - Theta_k^{n-2}).
///  previous_iterate: n-1, like every other quantity of the n-1|n-2 Maxwellians.
///  two_back:         n-2, the literal index of the internal-energy line of the
///                    iteration; distances then shrink in pairs, not monotonically.
enum class LambdaTemperatures { previous_iterate, two_back };

std::string_view to_string(LambdaTemperatures choice) noexcept;
LambdaTemperatures parse_lambda_temperatures(std::string_view text);

struct PicardOptions {
  /// Spacing of the time levels t_j = j dt; t_final must be a multiple (to 1e-9).
  double dt = 0.01;
  /// Number of computed iterates; the first computed one is n = 3.
  int iterations = 12;
  /// Distances must decrease strictly from this iterate on.
  int burn_in = 3;
  /// Stop early once the distance drops below this (0 never stops).
  double tolerance = 0.0;
  /// Moment order of the N_q monitor; <= 0 selects d + l_1 + l_2 + 3.
  double q = 0.0;
  LambdaTemperatures lambda_temperatures = LambdaTemperatures::previous_iterate;
  AdvectionOptions advection;
  int threads = 1;
};

/// One computed iterate n.
struct PicardTrace {
  int iteration = 0;
  /// Weighted L1 distance sum_k ||f_k^n - f_k^{n-1}|| + ||M_k^n - M_k^{n-1}||
  /// in L1((1 + |xi|^2) dxi dx) at t_final.
  double distance = 0.0;
  /// N_q(f_k) and N_q(M_k) at t_final.
  std::array<double, 2> nq_f{};
  std::array<double, 2> nq_m{};
  /// N_q(f_1) + N_q(f_2) + N_q(M_1) + N_q(M_2) per time level.
  std::vector<double> nq_sum;
  /// Range of alpha_k(x, v, t_final) over x, v and both species.
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  /// Smallest f_k and M_k (M_k = g_k + f_k for model a) over every level.
  double min_f = 0.0;
  double min_m = 0.0;
};

struct PicardResult {
  /// Final iterate at t_final. Model a carries Theta from g + f (and g itself
  /// when the initial state did); model b the M field.
  KineticState state;
  std::vector<PicardTrace> trace;
  std::vector<double> times;
  /// Distances failed to decrease after the burn-in (reported, not thrown).
  bool non_contraction = false;
  std::string warning;
  /// Gronwall monitor: A0 = 2 max_k max(N_q(f_k^0), N_q(M_k^0)), C_q >= 0 the
  /// smallest rate whose envelope 2 A0 exp(4 C_q t) covers the first computed
  /// iterate; later iterates are checked against it.
  double q = 0.0;
  double A0 = 0.0;
  double C_q = 0.0;
  bool envelope_respected = true;
  double envelope_margin = 0.0;  ///< min over later iterates and levels of 1 - sum / envelope
};

/// Iterates the mild formulation on [0, t_final]. Each iterate solves
/// inhomogeneous transport along characteristics with integrating factor
/// alpha_k; the sources of iterate n use the moments of iterate n-1 and Theta of
/// iterate n-2. Iterates 0..2 are the initial data held constant in time.
/// Throws ConfigError for bad options, VacuumError and NegativeTemperatureError
/// from the reconstructed Maxwellians.
PicardResult picard_solve(const KineticState& initial, const PhysicalModel& model, const PhaseSpaceGrid& grid,
                          double t_final, const PicardOptions& options = {});

/// alpha(x, v, t_J) = \int_0^{t_J} a(x + (s - t_J) v, s) ds by the trapezoid rule
/// on the levels, with a given per level as rates[j][x]. Result layout [x][v].
std::vector<double> characteristic_integral(const std::vector<std::vector<double>>& rates,
                                            const SpeciesGrid& species_grid, const SpatialGrid& space, double dt,
                                            const AdvectionOptions& options = {}, int threads = 1);

}  // namespace bgkmix
