#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "bgkmix/core/field.hpp"
#include "bgkmix/core/grid.hpp"
#include "bgkmix/core/params.hpp"
#include "bgkmix/core/small_vector.hpp"

namespace bgkmix {

inline constexpr double kDefaultVacuumFloor = 1e-30;

/// Macroscopic quantities of one species at one spatial node.
/// Lambda, Theta and T_equil are only meaningful once Theta has been attached
/// with with_theta().
struct MomentSet {
  double n = 0.0;
  VelocityVector u;
  /// Mean internal variable over the species' active components (size l_k).
  InternalVector eta_bar;
  double T_trans = 0.0;
  double T_rot = 0.0;
  double Lambda = 0.0;
  double Theta = 0.0;
  double T_equil = 0.0;
  /// Pressure tensor, row-major d x d.
  std::array<double, 9> P{};

  double pressure(int a, int b, int dim) const noexcept {
    return P[static_cast<std::size_t>(a * dim + b)];
  }
};

/// Moments at one spatial node from its (v, eta) values. Throws VacuumError
/// (tagged with `node`) if n < n_floor.
MomentSet node_moments(std::span<const double> values, const SpeciesGrid& grid, double mass,
                       double n_floor = kDefaultVacuumFloor, std::size_t node = 0);

/// Moments at every spatial node.
std::vector<MomentSet> compute_moments(const DistributionField& f, const Species& species, const SpeciesGrid& grid,
                                       double n_floor = kDefaultVacuumFloor, int threads = 1);

/// Phase-space integrals of one species over the whole box.
struct SpeciesTotals {
  double mass = 0.0;
  /// m \int v f
  VelocityVector momentum;
  /// (m/2) \int (|v|^2 + |eta|^2) f
  double energy = 0.0;
};

/// Totals with per-node partial sums added in node order, so the result does
/// not depend on the thread count.
SpeciesTotals species_totals(const DistributionField& f, const Species& species, const SpeciesGrid& grid,
                             double cell_volume, int threads = 1);

/// Raw internal moments of an auxiliary field at one node: n = \int M,
/// h = \int eta M, S = \int m |eta|^2 M.
struct InternalMoments {
  double n = 0.0;
  InternalVector h;
  double S = 0.0;
};
InternalMoments internal_moments(std::span<const double> values, const SpeciesGrid& grid, double mass);
/// Internal temperature about the field's own mean, (S - m |h|^2 / n) / (l n).
double internal_temperature(const InternalMoments& m, double mass, int internal_dof) noexcept;

/// Theta of M_k = f_k + g_k from the moments of f_k and the raw internal
/// moments of g_k: T_rot + \int m |eta - eta_bar|^2 g / (l n), about f's n, eta_bar.
double theta_with_auxiliary(const MomentSet& f_moments, const InternalMoments& g, double mass,
                            int internal_dof) noexcept;

/// Lambda = T_trans + (l/d)(T_rot - Theta); throws NegativeTemperatureError if <= 0.
double lambda_from_internal(double T_trans, double T_rot, double Theta, const Species& species, int dim);

/// T = (d Lambda + l Theta)/(d + l).
double equilibrium_temperature(double Lambda, double Theta, int internal_dof, int dim) noexcept;

/// Copy of m with Theta attached and Lambda, T_equil derived from it.
MomentSet with_theta(MomentSet m, double Theta, const Species& species, int dim);

}  // namespace bgkmix
