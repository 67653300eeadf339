#include "bgkmix/diagnostics/state_reports.hpp"

#include <cmath>
#include <limits>

#include "bgkmix/core/parallel.hpp"

namespace bgkmix {
namespace {

constexpr double kEntropyFloor = 1e-300;

double norm(const VelocityVector& v) noexcept {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::array<std::vector<MomentSet>, 2> state_moments(const KineticState& state, const PhysicalModel& model,
                                                    const PhaseSpaceGrid& grid, int threads) {
  std::array<std::vector<MomentSet>, 2> out;
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const Species& sp = model[k];
    std::vector<MomentSet> m = compute_moments(state.f[ks], sp, grid[k], kDefaultVacuumFloor, threads);
    for (std::size_t ix = 0; ix < m.size(); ++ix) {
      const double theta =
          state.model == ModelVariant::b
              ? internal_temperature(internal_moments(state.maxwellian[ks].node(ix), grid[k], sp.mass), sp.mass,
                                     sp.internal_dof)
              : state.theta[ks][ix];
      m[ix] = with_theta(m[ix], theta, sp, model.dim);
    }
    out[ks] = std::move(m);
  }
  return out;
}

ConservationTotals conservation_totals(const KineticState& state, const PhysicalModel& model,
                                       const PhaseSpaceGrid& grid, int threads) {
  ConservationTotals t;
  t.time = state.time;
  const double cell = grid.space.cell_volume();
  t.momentum = VelocityVector(static_cast<std::size_t>(model.dim), 0.0);
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const Species& sp = model[k];
    const SpeciesGrid& g = grid[k];
    const SpeciesTotals s = species_totals(state.f[ks], sp, g, cell, threads);
    t.mass[ks] = s.mass;
    for (std::size_t a = 0; a < t.momentum.size(); ++a) t.momentum[a] += s.momentum[a];
    t.energy += s.energy;

    const double w = g.weight() * cell * sp.mass;
    const std::size_t ne = g.internal_size;
    for (std::size_t ix = 0; ix < grid.space.size(); ++ix) {
      const auto node = state.f[ks].node(ix);
      double partial = 0.0;
      for (std::size_t iv = 0; iv < g.velocity_size; ++iv) {
        double speed = 0.0;
        for (int a = 0; a < g.dim; ++a) speed += g.velocity(iv, a) * g.velocity(iv, a);
        speed = std::sqrt(speed);
        for (std::size_t ie = 0; ie < ne; ++ie) partial += speed * std::abs(node[iv * ne + ie]);
      }
      t.momentum_scale += w * partial;
    }

    if (state.model == ModelVariant::a && !state.theta[ks].empty()) {
      const std::vector<MomentSet> m = compute_moments(state.f[ks], sp, g, 0.0, threads);
      for (std::size_t ix = 0; ix < m.size(); ++ix)
        t.theta_energy += 0.5 * sp.internal_dof * m[ix].n * state.theta[ks][ix] * cell;
    }
  }
  return t;
}

ConservationReport conservation_report(const KineticState& state, const PhysicalModel& model,
                                       const PhaseSpaceGrid& grid, const ConservationTotals* reference, int threads) {
  ConservationReport r;
  r.totals = conservation_totals(state, model, grid, threads);
  r.reference = reference ? *reference : r.totals;
  const ConservationTotals& a = r.totals;
  const ConservationTotals& b = r.reference;
  for (std::size_t k = 0; k < 2; ++k) r.mass_drift[k] = b.mass[k] > 0.0 ? std::abs(a.mass[k] - b.mass[k]) / b.mass[k] : 0.0;
  r.momentum_delta = VelocityVector(a.momentum.size(), 0.0);
  for (std::size_t i = 0; i < a.momentum.size(); ++i) r.momentum_delta[i] = a.momentum[i] - b.momentum[i];
  r.momentum_drift = b.momentum_scale > 0.0 ? norm(r.momentum_delta) / b.momentum_scale : 0.0;
  r.energy_drift = b.energy > 0.0 ? std::abs(a.energy - b.energy) / b.energy : 0.0;
  r.theta_energy_delta = a.theta_energy - b.theta_energy;
  return r;
}

PositivityReport positivity_check(const KineticState& state) {
  PositivityReport r;
  r.min_value = std::numeric_limits<double>::infinity();
  auto scan = [&](const DistributionField& f, int k, const char* name) {
    const double* p = f.data();
    for (std::size_t i = 0; i < f.size(); ++i)
      if (p[i] < r.min_value) {
        r.min_value = p[i];
        r.species = k;
        r.field = name;
        r.ie = i % f.internal_size();
        r.iv = (i / f.internal_size()) % f.velocity_size();
        r.ix = i / f.node_size();
      }
  };
  for (int k = 0; k < 2; ++k) {
    scan(state.f[static_cast<std::size_t>(k)], k, "f");
    if (state.model == ModelVariant::b) scan(state.maxwellian[static_cast<std::size_t>(k)], k, "M");
  }
  r.pass = r.min_value >= 0.0;
  return r;
}

EntropyReport entropy_report(const KineticState& state, const PhaseSpaceGrid& grid) {
  EntropyReport r;
  r.time = state.time;
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const double w = grid[k].weight() * grid.space.cell_volume();
    double h = 0.0;
    for (double f : state.f[ks].values())
      if (f >= kEntropyFloor) h += f * std::log(f);
    r.per_species[ks] = w * h;
    r.H += r.per_species[ks];
  }
  return r;
}

}  // namespace bgkmix
