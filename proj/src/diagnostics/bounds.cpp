#include "bgkmix/diagnostics/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bgkmix/core/mixture.hpp"
#include "bgkmix/diagnostics/state_reports.hpp"

namespace bgkmix {
namespace {

double free_transport_floor(const DistributionField& f, const SpeciesGrid& g) {
  const std::size_t ne = g.internal_size;
  double c0 = 0.0;
  for (std::size_t iv = 0; iv < g.velocity_size; ++iv) {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t ix = 0; ix < f.space_size(); ++ix) {
      const auto node = f.node(ix);
      double rho = 0.0;
      for (std::size_t ie = 0; ie < ne; ++ie) rho += node[iv * ne + ie];
      lowest = std::min(lowest, rho);
    }
    c0 += lowest;
  }
  return c0 * g.weight();
}

}  // namespace

void BoundsMonitor::observe(const KineticState& state, int threads) {
  const auto m = state_moments(state, model_, grid_, threads);
  const CollisionMatrix nu = model_.nu_tilde();
  if (!started_) {
    started_ = true;
    t0_ = state.time;
    for (int k = 0; k < 2; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      report_.C0[ks] = free_transport_floor(state.f[ks], grid_[k]);
      report_.decay_rate[ks] = nu[ks][0] + nu[ks][1];
      report_.density_margin[ks] = std::numeric_limits<double>::infinity();
    }
    report_.temperature_margin = std::numeric_limits<double>::infinity();
  }

  BoundsSample s;
  s.time = state.time - t0_;
  s.min_temperature = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    s.min_density[ks] = std::numeric_limits<double>::infinity();
    for (const MomentSet& mk : m[ks]) {
      s.min_density[ks] = std::min(s.min_density[ks], mk.n);
      s.min_temperature = std::min({s.min_temperature, mk.T_equil, mk.Lambda, mk.Theta});
    }
    s.density_bound[ks] = report_.C0[ks] * std::exp(-report_.decay_rate[ks] * s.time);
  }
  for (std::size_t ix = 0; ix < m[0].size(); ++ix) {
    const ExchangeSet x = exchange_quantities(m[0][ix], m[1][ix], model_.coupling, model_.species, model_.dim);
    s.min_temperature = std::min({s.min_temperature, x.Lambda12, x.Theta12, x.Lambda21, x.Theta21});
  }
  if (report_.samples.empty()) report_.temperature_constant = s.min_temperature;
  const double C = report_.temperature_constant;
  s.temperature_bound = C * std::exp(-C * s.time);

  for (std::size_t k = 0; k < 2; ++k) {
    if (!(s.min_density[k] >= s.density_bound[k])) report_.density_pass = false;
    if (s.density_bound[k] > 0.0)
      report_.density_margin[k] = std::min(report_.density_margin[k], s.min_density[k] / s.density_bound[k] - 1.0);
  }
  if (!(s.min_temperature >= s.temperature_bound)) report_.temperature_pass = false;
  if (s.temperature_bound > 0.0)
    report_.temperature_margin = std::min(report_.temperature_margin, s.min_temperature / s.temperature_bound - 1.0);
  report_.samples.push_back(s);
}

BoundsReport bounds_check(const std::vector<KineticState>& history, const PhysicalModel& model,
                          const PhaseSpaceGrid& grid, int threads) {
  BoundsMonitor monitor(model, grid);
  for (const KineticState& s : history) monitor.observe(s, threads);
  return monitor.report();
}

}  // namespace bgkmix
