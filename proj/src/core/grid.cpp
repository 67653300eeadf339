#include "bgkmix/core/grid.hpp"

#include <cmath>
#include <sstream>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/small_vector.hpp"

namespace bgkmix {
namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void fill_coords(const AxisGrid& axis, int dims, std::size_t count, std::vector<double>& out) {
  out.assign(count * static_cast<std::size_t>(dims), 0.0);
  const auto n = static_cast<std::size_t>(axis.nodes);
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rem = flat;
    for (int a = dims - 1; a >= 0; --a) {
      out[flat * static_cast<std::size_t>(dims) + static_cast<std::size_t>(a)] = axis.points[rem % n];
      rem /= n;
    }
  }
}

int index_along_flat(std::size_t flat, int axis, int dims, int nodes) {
  std::size_t stride = 1;
  for (int a = dims - 1; a > axis; --a) stride *= static_cast<std::size_t>(nodes);
  return static_cast<int>((flat / stride) % static_cast<std::size_t>(nodes));
}

struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 1099511628211ull;
    }
  }
  void f64(double v) { bytes(&v, sizeof v); }
  void i64(std::int64_t v) { bytes(&v, sizeof v); }
};

}  // namespace

AxisGrid AxisGrid::symmetric(int nodes, double half_width) {
  AxisGrid g;
  g.nodes = nodes;
  g.half_width = half_width;
  g.spacing = 2.0 * half_width / nodes;
  g.points.resize(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) g.points[static_cast<std::size_t>(i)] = -half_width + (i + 0.5) * g.spacing;
  // Exact mirror symmetry so odd moments of symmetric data cancel.
  for (int i = 0; i < nodes / 2; ++i)
    g.points[static_cast<std::size_t>(nodes - 1 - i)] = -g.points[static_cast<std::size_t>(i)];
  if (nodes % 2 == 1) g.points[static_cast<std::size_t>(nodes / 2)] = 0.0;
  return g;
}

std::size_t SpatialGrid::size() const noexcept {
  std::size_t n = 1;
  for (int v : nodes) n *= static_cast<std::size_t>(v);
  return n;
}

double SpatialGrid::cell_volume() const noexcept {
  double v = 1.0;
  for (double h : spacing) v *= h;
  return v;
}

std::size_t SpatialGrid::stride(int axis) const noexcept {
  std::size_t s = 1;
  for (int a = dim - 1; a > axis; --a) s *= static_cast<std::size_t>(nodes[static_cast<std::size_t>(a)]);
  return s;
}

int SpatialGrid::index_along(std::size_t flat, int axis) const noexcept {
  return static_cast<int>((flat / stride(axis)) % static_cast<std::size_t>(nodes[static_cast<std::size_t>(axis)]));
}

double SpatialGrid::coordinate(std::size_t flat, int axis) const noexcept {
  return (index_along(flat, axis) + 0.5) * spacing[static_cast<std::size_t>(axis)];
}

double SpeciesGrid::velocity_weight() const noexcept { return std::pow(velocity_axis.spacing, dim); }
double SpeciesGrid::internal_weight() const noexcept { return std::pow(internal_axis.spacing, internal_dof); }

int SpeciesGrid::velocity_index(std::size_t iv, int axis) const noexcept {
  return index_along_flat(iv, axis, dim, velocity_axis.nodes);
}
int SpeciesGrid::internal_index(std::size_t ie, int axis) const noexcept {
  return index_along_flat(ie, axis, internal_dof, internal_axis.nodes);
}

std::uint64_t PhaseSpaceGrid::hash() const noexcept {
  Fnv f;
  f.i64(space.dim);
  for (double a : space.lengths) f.f64(a);
  for (int n : space.nodes) f.i64(n);
  for (const auto& s : species) {
    f.i64(s.dim);
    f.i64(s.internal_dof);
    f.i64(s.velocity_axis.nodes);
    f.f64(s.velocity_axis.half_width);
    f.i64(s.internal_axis.nodes);
    f.f64(s.internal_axis.half_width);
  }
  return f.h;
}

double truncated_mass_fraction(double half_width, double shift, double sigma, int axes) noexcept {
  const double s = std::abs(shift);
  const double outside =
      0.5 * (std::erfc((half_width - s) / (sigma * std::sqrt(2.0))) + std::erfc((half_width + s) / (sigma * std::sqrt(2.0))));
  if (outside >= 1.0) return 1.0;
  return -std::expm1(axes * std::log1p(-outside));
}

PhaseSpaceGrid build_grid(const GridConfig& config, const SpeciesParams& species) {
  if (config.dim < 1 || config.dim > static_cast<int>(kMaxDimension))
    throw ConfigError("dimension must be 1, 2 or 3");
  const auto d = static_cast<std::size_t>(config.dim);
  if (config.box_lengths.size() != d || config.x_nodes.size() != d)
    throw ConfigError("box_lengths and x_nodes need one entry per dimension");
  if (!(config.max_temperature > 0.0)) throw ConfigError("max_temperature must be positive");
  if (config.max_speed < 0.0 || config.max_internal_mean < 0.0)
    throw ConfigError("max_speed and max_internal_mean must be non-negative");

  PhaseSpaceGrid grid;
  grid.space.dim = config.dim;
  for (std::size_t a = 0; a < d; ++a) {
    if (!(config.box_lengths[a] > 0.0)) throw ConfigError("box lengths must be positive");
    if (config.x_nodes[a] < 4) throw ConfigError("at least 4 spatial nodes per dimension are required");
    grid.space.lengths.push_back(config.box_lengths[a]);
    grid.space.nodes.push_back(config.x_nodes[a]);
    grid.space.spacing.push_back(config.box_lengths[a] / config.x_nodes[a]);
  }

  for (int k = 0; k < 2; ++k) {
    const auto& sc = config.species[static_cast<std::size_t>(k)];
    const Species& sp = species.species[static_cast<std::size_t>(k)];
    if (sc.velocity_nodes < 4 || sc.internal_nodes < 4)
      throw ConfigError("at least 4 velocity and internal nodes per dimension are required");
    if (!(sp.mass > 0.0)) throw ConfigError("species mass must be positive");
    const double sigma = std::sqrt(config.max_temperature / sp.mass);
    const double vmax = sc.velocity_max > 0.0 ? sc.velocity_max : config.max_speed + config.sigma_multiple * sigma;
    const double emax =
        sc.internal_max > 0.0 ? sc.internal_max : config.max_internal_mean + config.sigma_multiple * sigma;

    SpeciesGrid& g = grid.species[static_cast<std::size_t>(k)];
    g.dim = config.dim;
    g.internal_dof = sp.internal_dof;
    g.velocity_axis = AxisGrid::symmetric(sc.velocity_nodes, vmax);
    g.internal_axis = AxisGrid::symmetric(sc.internal_nodes, emax);
    g.velocity_size = ipow(static_cast<std::size_t>(sc.velocity_nodes), config.dim);
    g.internal_size = ipow(static_cast<std::size_t>(sc.internal_nodes), sp.internal_dof);
    fill_coords(g.velocity_axis, config.dim, g.velocity_size, g.velocity_coords);
    fill_coords(g.internal_axis, sp.internal_dof, g.internal_size, g.internal_coords);

    const double lost_v = truncated_mass_fraction(vmax, config.max_speed, sigma, config.dim);
    const double lost_e = truncated_mass_fraction(emax, config.max_internal_mean, sigma, sp.internal_dof);
    g.truncation_loss = lost_v + lost_e - lost_v * lost_e;
    if (!(g.truncation_loss < config.mass_loss_tolerance)) {
      std::ostringstream os;
      os << "species " << k + 1 << ": reference Maxwellian at T_max=" << config.max_temperature << " loses "
         << g.truncation_loss << " of its mass outside v_max=" << vmax << ", eta_max=" << emax
         << " (tolerance " << config.mass_loss_tolerance << ")";
      throw TruncationError(os.str());
    }
  }
  return grid;
}

}  // namespace bgkmix
