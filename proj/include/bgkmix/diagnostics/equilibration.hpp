#pragma once

#include <array>
#include <string>
#include <vector>

#include "bgkmix/core/field.hpp"
#include "bgkmix/core/grid.hpp"
#include "bgkmix/core/moments.hpp"
#include "bgkmix/core/params.hpp"
#include "bgkmix/core/small_vector.hpp"

namespace bgkmix {

/// Macroscopic state of a space-homogeneous run at one time.
struct HomogeneousSample {
  double time = 0.0;
  std::array<MomentSet, 2> species;
};

/// Node 0 moments of a (space-homogeneous) state.
HomogeneousSample homogeneous_sample(const KineticState& state, const PhysicalModel& model,
                                     const PhaseSpaceGrid& grid);

/// Asymptotic least-squares rate r of |s(t)| ~ c exp(-r t) over the later half
/// of the samples above the noise floor (all of them when fewer than four). A signal
/// crossing zero twice or more is fitted through the local maxima of |s| (the
/// decay envelope); after a single crossing only the later samples are used.
/// Throws InsufficientDecayError when fewer than two usable points remain.
double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& signal, double noise_floor);

struct DecayFit {
  std::string name;
  /// Never above the noise floor: already equilibrated, no rate.
  bool trivial = false;
  /// |s| never increases between samples (ignoring values below the floor).
  bool monotone = true;
  double rate = 0.0;
  double initial = 0.0;
  double final = 0.0;
};

struct EquilibrationOptions {
  double noise_floor = 1e-12;
};

struct EquilibrationReport {
  /// Lambda_1 - Theta_1, Lambda_2 - Theta_2, |u_1 - u_2|, T_1 - T_2.
  std::vector<DecayFit> fits;
  /// Limits implied by conservation: momentum-weighted mean velocity and the
  /// common temperature of the total energy at that velocity. Assumes the
  /// internal means eta_bar_k are zero.
  VelocityVector mean_velocity;
  double mean_temperature = 0.0;
  /// Distances of the last sample from those limits.
  double final_velocity_gap = 0.0;
  double final_temperature_gap = 0.0;
  /// max_k |Lambda_k - Theta_k| and |T_k - Lambda_k| at the last sample.
  double final_internal_gap = 0.0;
  /// Linearized single-species decay rate of Lambda_k - Theta_k (filled when
  /// nu~_21 = 0) and the relative error of the fitted rate against it.
  std::array<double, 2> analytic_rate{};
  std::array<double, 2> rate_error{};
};

/// Decay of Lambda_k - Theta_k for one species with no interspecies coupling,
/// linearized about the species' own equilibrium. Model b: the scalar rate
/// a = R (d + l)/(d Z_r), R = nu~_kk n_k / (n_1 + n_2). Model a: f_k's rotational
/// temperature couples in through nu_kk n_k (Theta_k - T_rot), giving the 2x2
/// system (T_rot - Theta, Lambda - Theta)' = [[0, -R/Z_r], [c R, -c R/Z_r]],
/// c = (d + l)/d; the rate is minus the largest real part of its eigenvalues.
double single_species_rate(const PhysicalModel& model, int k, double n1, double n2);

EquilibrationReport equilibration_report(const std::vector<HomogeneousSample>& history, const PhysicalModel& model,
                                         const EquilibrationOptions& options = {});

}  // namespace bgkmix
