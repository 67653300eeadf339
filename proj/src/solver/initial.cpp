#include "bgkmix/solver/initial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/maxwellian.hpp"
#include "bgkmix/core/moments.hpp"
#include "bgkmix/core/parallel.hpp"

namespace bgkmix {
namespace {

template <class V>
V resized(const V& in, std::size_t n) {
  V out(n);
  for (std::size_t i = 0; i < std::min(n, in.size()); ++i) out[i] = in[i];
  return out;
}

double wave(const SpeciesInitial& s, const SpatialGrid& space, std::size_t ix) {
  double arg = s.phase;
  for (int a = 0; a < space.dim; ++a)
    arg += 2.0 * std::numbers::pi * s.mode * space.coordinate(ix, a) / space.lengths[static_cast<std::size_t>(a)];
  return std::sin(arg);
}

void fill_node(std::span<double> out, const SpeciesInitial& s, InitialKind kind, const Species& species,
               const SpeciesGrid& grid, const SpatialGrid& space, std::size_t ix) {
  const auto d = static_cast<std::size_t>(grid.dim);
  const auto l = static_cast<std::size_t>(grid.internal_dof);
  const double w = wave(s, space, ix);
  MaxwellianParams p;
  p.n = s.n * (1.0 + s.n_amplitude * w);
  p.u = resized(s.u, d);
  p.u[0] += s.u_amplitude * w;
  p.eta_bar = resized(s.eta_bar, l);
  p.Lambda = s.T_trans * (1.0 + s.T_amplitude * w);
  p.Theta = s.T_rot * (1.0 + s.T_amplitude * w);

  switch (kind) {
    case InitialKind::perturbed_maxwellian:
      make_separable(p, species.mass, grid).write(out);
      break;
    case InitialKind::two_beam: {
      if (s.beam_fraction < 0.0 || s.beam_fraction > 1.0) throw DomainError("beam_fraction must lie in [0, 1]");
      std::fill(out.begin(), out.end(), 0.0);
      MaxwellianParams plus = p, minus = p;
      plus.n = p.n * s.beam_fraction;
      minus.n = p.n * (1.0 - s.beam_fraction);
      plus.u[0] += s.beam_speed;
      minus.u[0] -= s.beam_speed;
      make_separable(plus, species.mass, grid).accumulate(out, 1.0);
      make_separable(minus, species.mass, grid).accumulate(out, 1.0);
      break;
    }
    case InitialKind::fixed_offset: {
      InternalVector dir = s.w_direction.size() == 0 ? InternalVector(l) : resized(s.w_direction, l);
      if (s.w_direction.size() == 0) dir[0] = 1.0;
      make_separable(fixed_offset_params(p.n, p.u, p.Lambda, dir, s.p_inf, species), species.mass, grid).write(out);
      break;
    }
  }
}

}  // namespace

std::string_view to_string(InitialKind kind) noexcept {
  switch (kind) {
    case InitialKind::perturbed_maxwellian:
      return "perturbed_maxwellian";
    case InitialKind::two_beam:
      return "two_beam";
    case InitialKind::fixed_offset:
      return "fixed_offset";
  }
  return "perturbed_maxwellian";
}

InitialKind parse_initial_kind(std::string_view text) {
  if (text == "perturbed_maxwellian") return InitialKind::perturbed_maxwellian;
  if (text == "two_beam") return InitialKind::two_beam;
  if (text == "fixed_offset") return InitialKind::fixed_offset;
  throw ConfigError("unknown initial condition '" + std::string(text) +
                    "' (expected perturbed_maxwellian, two_beam or fixed_offset)");
}

KineticState make_initial_state(const InitialCondition& ic, const PhysicalModel& model, const PhaseSpaceGrid& grid,
                                int threads) {
  KineticState state;
  state.model = model.variant;
  const std::size_t nx = grid.space.size();
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const SpeciesInitial& s = ic.species[ks];
    const Species& sp = model[k];
    if (!(s.n > 0.0) || !(s.T_trans > 0.0) || !(s.T_rot > 0.0))
      throw DomainError("initial density and temperatures must be positive");
    if (std::abs(s.n_amplitude) >= 1.0 || std::abs(s.T_amplitude) >= 1.0)
      throw DomainError("relative perturbation amplitudes must be below 1");

    state.f[ks] = DistributionField::for_species(grid, k);
    state.theta[ks].assign(nx, 0.0);
    if (model.variant == ModelVariant::b) state.maxwellian[ks] = DistributionField::for_species(grid, k);

    parallel_for(nx, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t ix = begin; ix < end; ++ix) {
        fill_node(state.f[ks].node(ix), s, ic.kind, sp, grid[k], grid.space, ix);
        const MomentSet m = node_moments(state.f[ks].node(ix), grid[k], sp.mass, kDefaultVacuumFloor, ix);
        const double theta = s.theta > 0.0 ? s.theta : m.T_rot;
        const MomentSet full = with_theta(m, theta, sp, model.dim);
        state.theta[ks][ix] = theta;
        if (model.variant == ModelVariant::b)
          make_separable(species_params(full), sp.mass, grid[k]).write(state.maxwellian[ks].node(ix));
      }
    });
    if (model.variant == ModelVariant::b) state.theta[ks].clear();
  }
  return state;
}

}  // namespace bgkmix
