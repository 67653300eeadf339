#include "bgkmix/solver/stepper.hpp"

#include <algorithm>

#include <sstream>
#include <string>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/maxwellian.hpp"
#include "bgkmix/core/moments.hpp"
#include "bgkmix/core/parallel.hpp"

namespace bgkmix {
namespace {

// Theta_k transported with the species: advect (rho, Theta rho) over (x, v).
void advect_theta(KineticState& state, int k, const PhaseSpaceGrid& grid, double dt, const AdvectionOptions& options,
                  int threads) {
  const auto ks = static_cast<std::size_t>(k);
  const DistributionField& f = state.f[ks];
  const std::size_t nx = f.space_size();
  const std::size_t nv = f.velocity_size();
  const std::size_t ne = f.internal_size();
  std::vector<double> pair(nx * nv * 2);
  for (std::size_t ix = 0; ix < nx; ++ix)
    for (std::size_t iv = 0; iv < nv; ++iv) {
      const double* row = f.data() + f.index(ix, iv, 0);
      double rho = 0.0;
      for (std::size_t ie = 0; ie < ne; ++ie) rho += row[ie];
      pair[(ix * nv + iv) * 2] = rho;
      pair[(ix * nv + iv) * 2 + 1] = rho * state.theta[ks][ix];
    }
  advect_columns(pair, 2, grid[k], grid.space, dt, options, threads);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    double rho = 0.0, q = 0.0;
    for (std::size_t iv = 0; iv < nv; ++iv) {
      rho += pair[(ix * nv + iv) * 2];
      q += pair[(ix * nv + iv) * 2 + 1];
    }
    if (rho > 0.0) state.theta[ks][ix] = q / rho;
  }
}

// Theta_k from g_k + f_k at every node after transport.
void read_back_theta(KineticState& state, const PhysicalModel& model, int k, const PhaseSpaceGrid& grid,
                     int threads) {
  const auto ks = static_cast<std::size_t>(k);
  const Species& sp = model[k];
  const std::vector<MomentSet> m = compute_moments(state.f[ks], sp, grid[k], kDefaultVacuumFloor, threads);
  for (std::size_t ix = 0; ix < m.size(); ++ix) {
    const InternalMoments g = internal_moments(state.maxwellian[ks].node(ix), grid[k], sp.mass);
    const double theta = theta_with_auxiliary(m[ix], g, sp.mass, sp.internal_dof);
    if (!(theta > 0.0)) {
      std::ostringstream os;
      os << "Theta of species " << k + 1 << " at spatial node " << ix << " became " << theta << " after transport";
      throw NegativeTemperatureError(os.str());
    }
    state.theta[ks][ix] = theta;
  }
}

}  // namespace

std::string_view to_string(ThetaTransport transport) noexcept {
  return transport == ThetaTransport::bulk ? "bulk" : "kinetic";
}

ThetaTransport parse_theta_transport(std::string_view text) {
  if (text == "bulk") return ThetaTransport::bulk;
  if (text == "kinetic") return ThetaTransport::kinetic;
  throw ConfigError("unknown theta transport '" + std::string(text) + "' (expected bulk or kinetic)");
}

void attach_theta_auxiliary(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid,
                            int threads) {
  if (state.model != ModelVariant::a) throw ConfigError("only model a carries the auxiliary g_k");
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const Species& sp = model[k];
    const std::vector<MomentSet> m = compute_moments(state.f[ks], sp, grid[k], kDefaultVacuumFloor, threads);
    DistributionField g = DistributionField::for_species(grid, k);
    parallel_for(m.size(), threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t ix = begin; ix < end; ++ix) {
        const MomentSet full = with_theta(m[ix], state.theta[ks][ix], sp, model.dim);
        auto node = g.node(ix);
        make_separable(species_params(full), sp.mass, grid[k]).write(node);
        const auto f = state.f[ks].node(ix);
        for (std::size_t i = 0; i < node.size(); ++i) node[i] -= f[i];
      }
    });
    state.maxwellian[ks] = std::move(g);
  }
}

void advect_state(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid, double dt,
                  const AdvectionOptions& options, int threads) {
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const bool kinetic_theta = state.model == ModelVariant::a && !state.maxwellian[ks].empty();
    if (state.model == ModelVariant::a && !kinetic_theta) advect_theta(state, k, grid, dt, options, threads);
    advect(state.f[ks], grid[k], grid.space, dt, options, threads);
    if (state.model == ModelVariant::b) advect(state.maxwellian[ks], grid[k], grid.space, dt, options, threads);
    if (kinetic_theta) {
      AdvectionOptions signed_data = options;
      signed_data.limit_positivity = false;
      advect(state.maxwellian[ks], grid[k], grid.space, dt, signed_data, threads);
      read_back_theta(state, model, k, grid, threads);
    }
  }
}

double min_state_value(const KineticState& state) noexcept {
  double m = 0.0;
  bool first = true;
  auto scan = [&](const DistributionField& f) {
    for (double v : f.values()) {
      if (first || v < m) m = v;
      first = false;
    }
  };
  for (const auto& f : state.f) scan(f);
  if (state.model == ModelVariant::b)
    for (const auto& M : state.maxwellian) scan(M);
  return m;
}

StepReport step(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid, double dt,
                const SolverOptions& options) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  if (state.model == ModelVariant::a) {
    const bool has_g = !state.maxwellian[0].empty();
    if (options.theta_transport == ThetaTransport::kinetic && !has_g) {
      attach_theta_auxiliary(state, model, grid, options.threads);
    } else if (options.theta_transport == ThetaTransport::bulk && has_g) {
      state.maxwellian = {};
    }
  }
  const double cell = grid.space.cell_volume();
  std::array<SpeciesTotals, 2> before;
  for (int k = 0; k < 2; ++k)
    before[static_cast<std::size_t>(k)] =
        species_totals(state.f[static_cast<std::size_t>(k)], model[k], grid[k], cell, options.threads);

  advect_state(state, model, grid, 0.5 * dt, options.advection, options.threads);
  const RelaxationReport relax_report = relax(state, model, grid, dt, options.relaxation, options.threads);
  advect_state(state, model, grid, 0.5 * dt, options.advection, options.threads);
  state.time += dt;
  ++state.steps;

  StepReport report;
  report.dt = dt;
  report.max_exponent = relax_report.max_exponent;
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const SpeciesTotals after = species_totals(state.f[ks], model[k], grid[k], cell, options.threads);
    report.mass_delta[ks] = after.mass - before[ks].mass;
    report.momentum_delta[ks] = after.momentum;
    report.momentum_delta[ks] -= before[ks].momentum;
    report.energy_delta[ks] = after.energy - before[ks].energy;
  }
  report.min_value = min_state_value(state);
  report.positive = report.min_value >= 0.0;
  report.vacuum = relax_report.min_density < options.vacuum_warning;
  return report;
}

}  // namespace bgkmix
