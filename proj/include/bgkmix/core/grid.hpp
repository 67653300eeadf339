#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "bgkmix/core/params.hpp"

namespace bgkmix {

/// Uniform midpoint nodes on the symmetric interval [-half_width, half_width].
struct AxisGrid {
  int nodes = 0;
  double half_width = 0.0;
  double spacing = 0.0;
  std::vector<double> points;

  static AxisGrid symmetric(int nodes, double half_width);
};

/// Periodic box Lambda_poly = prod (0, a_i) with cell-centred nodes.
struct SpatialGrid {
  int dim = 1;
  std::vector<double> lengths;
  std::vector<int> nodes;
  std::vector<double> spacing;

  std::size_t size() const noexcept;
  double cell_volume() const noexcept;
  /// Row-major stride of axis (last axis fastest).
  std::size_t stride(int axis) const noexcept;
  int index_along(std::size_t flat, int axis) const noexcept;
  double coordinate(std::size_t flat, int axis) const noexcept;
};

/// Velocity and internal-energy grids of one species. The internal grid spans
/// only the l_k active components of eta.
struct SpeciesGrid {
  int dim = 1;
  int internal_dof = 1;
  AxisGrid velocity_axis;
  AxisGrid internal_axis;
  std::size_t velocity_size = 0;  ///< velocity_axis.nodes^dim
  std::size_t internal_size = 0;  ///< internal_axis.nodes^l
  /// Flattened coordinates: velocity_coords[iv * dim + a], internal_coords[ie * l + b].
  std::vector<double> velocity_coords;
  std::vector<double> internal_coords;
  /// Fraction of reference-Maxwellian mass outside the box (from build_grid).
  double truncation_loss = 0.0;

  std::size_t node_size() const noexcept { return velocity_size * internal_size; }
  double velocity_weight() const noexcept;
  double internal_weight() const noexcept;
  /// Quadrature weight of one (v, eta) node.
  double weight() const noexcept { return velocity_weight() * internal_weight(); }
  double velocity(std::size_t iv, int axis) const noexcept {
    return velocity_coords[iv * static_cast<std::size_t>(dim) + static_cast<std::size_t>(axis)];
  }
  double internal(std::size_t ie, int axis) const noexcept {
    return internal_coords[ie * static_cast<std::size_t>(internal_dof) + static_cast<std::size_t>(axis)];
  }
  /// Index along one velocity axis of the flattened velocity node iv.
  int velocity_index(std::size_t iv, int axis) const noexcept;
  int internal_index(std::size_t ie, int axis) const noexcept;
};

struct PhaseSpaceGrid {
  SpatialGrid space;
  std::array<SpeciesGrid, 2> species;

  const SpeciesGrid& operator[](int k) const noexcept { return species[static_cast<std::size_t>(k)]; }
  /// Stable FNV-1a hash over every grid parameter; stored in checkpoints.
  std::uint64_t hash() const noexcept;
};

struct SpeciesGridConfig {
  int velocity_nodes = 48;
  /// <= 0 selects |u|_max + 8 sqrt(T_max / m_k).
  double velocity_max = 0.0;
  int internal_nodes = 24;
  /// <= 0 selects |eta_bar|_max + 8 sqrt(T_max / m_k).
  double internal_max = 0.0;
};

struct GridConfig {
  int dim = 1;
  std::vector<double> box_lengths{1.0};
  std::vector<int> x_nodes{64};
  std::array<SpeciesGridConfig, 2> species{};
  /// Largest temperature the run is expected to reach; sizes the truncation check.
  double max_temperature = 1.0;
  /// Largest |u| (and |u_kj|) expected.
  double max_speed = 0.0;
  /// Largest |eta_bar| expected.
  double max_internal_mean = 0.0;
  double mass_loss_tolerance = 1e-10;
  /// Number of thermal standard deviations used by the automatic box rule.
  double sigma_multiple = 8.0;
};

/// Mass fraction of a Gaussian N(shift, sigma^2) falling outside [-h, h], per axis,
/// combined over `axes` independent axes.
double truncated_mass_fraction(double half_width, double shift, double sigma, int axes) noexcept;

/// Builds all grids; throws ConfigError on bad extents/counts and TruncationError
/// when a reference Maxwellian at max_temperature loses >= tolerance of its mass.
PhaseSpaceGrid build_grid(const GridConfig& config, const SpeciesParams& species);

}  // namespace bgkmix
