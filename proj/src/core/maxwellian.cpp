#include "bgkmix/core/maxwellian.hpp"

#include <cmath>
#include <sstream>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/parallel.hpp"

namespace bgkmix {
namespace {

constexpr double kExponentCutoff = -700.0;

// Tensor product of per-axis 1D Gaussian factors, flattened like the grid.
std::vector<double> factor_table(const AxisGrid& axis, int dims, std::size_t count, const double* centre,
                                 double mass, double temperature) {
  const auto n1 = static_cast<std::size_t>(axis.nodes);
  std::vector<std::vector<double>> per_axis(static_cast<std::size_t>(dims), std::vector<double>(n1));
  for (int a = 0; a < dims; ++a)
    for (std::size_t i = 0; i < n1; ++i) {
      const double c = axis.points[i] - centre[a];
      const double e = -mass * c * c / (2.0 * temperature);
      per_axis[static_cast<std::size_t>(a)][i] = e < kExponentCutoff ? 0.0 : std::exp(e);
    }
  std::vector<double> out(count, 1.0);
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rem = flat;
    double v = 1.0;
    for (int a = dims - 1; a >= 0; --a) {
      v *= per_axis[static_cast<std::size_t>(a)][rem % n1];
      rem /= n1;
    }
    out[flat] = v;
  }
  return out;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

void SeparableMaxwellian::accumulate(std::span<double> out, double coeff) const noexcept {
  const std::size_t ne = internal.size();
  const double c = coeff * scale;
  for (std::size_t iv = 0; iv < velocity.size(); ++iv) {
    const double a = c * velocity[iv];
    if (a == 0.0) continue;
    double* row = out.data() + iv * ne;
    for (std::size_t ie = 0; ie < ne; ++ie) row[ie] += a * internal[ie];
  }
}

void SeparableMaxwellian::write(std::span<double> out) const noexcept {
  const std::size_t ne = internal.size();
  for (std::size_t iv = 0; iv < velocity.size(); ++iv) {
    const double a = scale * velocity[iv];
    double* row = out.data() + iv * ne;
    for (std::size_t ie = 0; ie < ne; ++ie) row[ie] = a * internal[ie];
  }
}

SeparableMaxwellian make_separable(const MaxwellianParams& p, double mass, const SpeciesGrid& grid) {
  if (!(p.Lambda > 0.0) || !(p.Theta > 0.0)) {
    std::ostringstream os;
    os << "Maxwellian needs positive temperatures (Lambda=" << p.Lambda << ", Theta=" << p.Theta << ")";
    throw DomainError(os.str());
  }
  if (p.n < 0.0) throw DomainError("Maxwellian density must be non-negative");
  SeparableMaxwellian g;
  g.velocity = factor_table(grid.velocity_axis, grid.dim, grid.velocity_size, p.u.data(), mass, p.Lambda);
  g.internal = factor_table(grid.internal_axis, grid.internal_dof, grid.internal_size, p.eta_bar.data(), mass, p.Theta);
  if (p.n == 0.0) return g;
  const double mass_v = sum(g.velocity) * grid.velocity_weight();
  const double mass_e = sum(g.internal) * grid.internal_weight();
  if (!(mass_v > 0.0) || !(mass_e > 0.0))
    throw DomainError("Maxwellian has no discrete mass on the grid (centre outside the velocity box)");
  g.scale = p.n / (mass_v * mass_e);
  return g;
}

DistributionField maxwellian(const MaxwellianParams& p, const Species& species, const SpeciesGrid& grid) {
  DistributionField out(1, grid.velocity_size, grid.internal_size);
  make_separable(p, species.mass, grid).write(out.node(0));
  return out;
}

DistributionField maxwellian_field(const std::vector<MaxwellianParams>& params, const Species& species,
                                   const SpeciesGrid& grid, int threads) {
  DistributionField out(params.size(), grid.velocity_size, grid.internal_size);
  parallel_for(params.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t ix = begin; ix < end; ++ix) make_separable(params[ix], species.mass, grid).write(out.node(ix));
  });
  return out;
}

MaxwellianParams species_params(const MomentSet& m) { return {m.n, m.u, m.eta_bar, m.Lambda, m.Theta}; }

MaxwellianParams equilibrium_params(const MomentSet& m) {
  if (!(m.T_equil > 0.0)) throw DomainError("equilibrium temperature must be positive");
  return {m.n, m.u, m.eta_bar, m.T_equil, m.T_equil};
}

DistributionField equilibrium_maxwellian(const MomentSet& m, const Species& species, const SpeciesGrid& grid) {
  return maxwellian(equilibrium_params(m), species, grid);
}

ExchangeMaxwellians exchange_params(const ExchangeSet& x, int k) {
  ExchangeMaxwellians out;
  if (k == 0) {
    out.mixed = {x.n12, x.u12, x.eta12, x.Lambda12, x.Theta12};
    out.mixed_equilibrium = {x.n12, x.u12, x.eta12, x.T12, x.T12};
  } else {
    out.mixed = {x.n21, x.u21, x.eta21, x.Lambda21, x.Theta21};
    out.mixed_equilibrium = {x.n21, x.u21, x.eta21, x.T21, x.T21};
  }
  return out;
}

std::array<DistributionField, 2> exchange_maxwellians(const ExchangeSet& x, const SpeciesParams& species,
                                                      const PhaseSpaceGrid& grid, ModelVariant model) {
  std::array<DistributionField, 2> out;
  for (int k = 0; k < 2; ++k) {
    const ExchangeMaxwellians p = exchange_params(x, k);
    out[static_cast<std::size_t>(k)] = maxwellian(model == ModelVariant::a ? p.mixed : p.mixed_equilibrium,
                                                  species.species[static_cast<std::size_t>(k)], grid[k]);
  }
  return out;
}

MaxwellianParams fixed_offset_params(double n, const VelocityVector& u, double T, const InternalVector& w_direction,
                                     double p_inf, const Species& species) {
  if (p_inf < 0.0) throw DomainError("p_inf must be non-negative");
  if (!(n > 0.0) || !(T > 0.0)) throw DomainError("fixed-offset equilibrium needs n > 0 and T > 0");
  if (static_cast<int>(w_direction.size()) != species.internal_dof)
    throw DomainError("w_direction must have one entry per active internal component");
  InternalVector w(w_direction.size());
  const double len = w_direction.norm();
  if (p_inf > 0.0) {
    if (!(len > 0.0)) throw DomainError("w_direction must be non-zero when p_inf > 0");
    w = (std::sqrt(2.0 * p_inf / (species.mass * n)) / len) * w_direction;
  }
  return {n, u, w, T, T};
}

DistributionField fixed_offset_equilibrium(double n, const VelocityVector& u, double T,
                                           const InternalVector& w_direction, double p_inf, const Species& species,
                                           const SpeciesGrid& grid) {
  return maxwellian(fixed_offset_params(n, u, T, w_direction, p_inf, species), species, grid);
}

}  // namespace bgkmix
