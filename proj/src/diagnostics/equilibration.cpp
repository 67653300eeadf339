#include "bgkmix/diagnostics/equilibration.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/diagnostics/state_reports.hpp"

namespace bgkmix {
namespace {

double norm_diff(const VelocityVector& a, const VelocityVector& b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

DecayFit fit_signal(std::string name, const std::vector<double>& times, const std::vector<double>& s,
                    double floor) {
  DecayFit fit;
  fit.name = std::move(name);
  fit.initial = s.front();
  fit.final = s.back();
  double peak = 0.0;
  for (double v : s) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 1; i < s.size(); ++i)
    if (std::abs(s[i]) > std::abs(s[i - 1]) && std::abs(s[i]) > floor) fit.monotone = false;
  if (peak <= floor) {
    fit.trivial = true;
    return fit;
  }
  fit.rate = fit_decay_rate(times, s, floor);
  return fit;
}

}  // namespace

HomogeneousSample homogeneous_sample(const KineticState& state, const PhysicalModel& model,
                                     const PhaseSpaceGrid& grid) {
  const auto m = state_moments(state, model, grid);
  HomogeneousSample s;
  s.time = state.time;
  s.species = {m[0].front(), m[1].front()};
  return s;
}

double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& signal, double noise_floor) {
  if (times.size() != signal.size()) throw ConfigError("decay fit needs one time per sample");
  // Two or more zero crossings mean oscillation: fit the envelope through the
  // local maxima of |s|. A single crossing (two real modes of opposite sign)
  // is skipped by fitting only the samples after it.
  int crossings = 0;
  std::size_t after = 0;
  for (std::size_t i = 1; i < signal.size(); ++i)
    if (signal[i] * signal[i - 1] < 0.0 && std::abs(signal[i]) > noise_floor) {
      ++crossings;
      after = i;
    }
  const bool envelope = crossings >= 2;

  std::vector<double> t, y;
  for (std::size_t i = envelope ? 0 : after; i < signal.size(); ++i) {
    const double a = std::abs(signal[i]);
    if (!(a > noise_floor)) continue;
    if (envelope) {
      const bool left = i == 0 || a >= std::abs(signal[i - 1]);
      const bool right = i + 1 == signal.size() || a >= std::abs(signal[i + 1]);
      if (!(left && right)) continue;
    }
    t.push_back(times[i]);
    y.push_back(std::log(a));
  }
  if (t.size() < 2) throw InsufficientDecayError("signal stays below the noise floor; no decay rate can be fitted");
  // Asymptotic rate: drop the earlier half, where faster modes still contribute.
  if (t.size() >= 4) {
    const auto half = static_cast<std::ptrdiff_t>(t.size() / 2);
    t.erase(t.begin(), t.begin() + half);
    y.erase(y.begin(), y.begin() + half);
  }
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mt += t[i];
    my += y[i];
  }
  mt /= static_cast<double>(t.size());
  my /= static_cast<double>(t.size());
  double sty = 0.0, stt = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sty += (t[i] - mt) * (y[i] - my);
    stt += (t[i] - mt) * (t[i] - mt);
  }
  if (!(stt > 0.0)) throw InsufficientDecayError("usable samples of the signal share one time");
  return -sty / stt;
}

double single_species_rate(const PhysicalModel& model, int k, double n1, double n2) {
  const Species& sp = model[k];
  const double chi = (k == 0 ? n1 : n2) / (n1 + n2);
  const double R = model.nu_tilde()[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] * chi;
  const double c = static_cast<double>(model.dim + sp.internal_dof) / model.dim;
  const double Z = sp.collision_number;
  if (model.variant == ModelVariant::b) return R * c / Z;
  // Eigenvalues of [[0, -R/Z], [c R, -c R/Z]]: lambda^2 + (c R/Z) lambda + c R^2/Z = 0.
  const double tr = -c * R / Z;
  const double det = c * R * R / Z;
  const std::complex<double> root = std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
  const double slowest = std::max((tr + root).real(), (tr - root).real()) / 2.0;
  return -slowest;
}

EquilibrationReport equilibration_report(const std::vector<HomogeneousSample>& history, const PhysicalModel& model,
                                         const EquilibrationOptions& options) {
  if (history.empty()) throw InsufficientDecayError("equilibration report needs at least one sample");
  std::vector<double> times;
  std::array<std::vector<double>, 4> sig;
  for (const HomogeneousSample& h : history) {
    times.push_back(h.time);
    for (std::size_t k = 0; k < 2; ++k) sig[k].push_back(h.species[k].Lambda - h.species[k].Theta);
    sig[2].push_back(norm_diff(h.species[0].u, h.species[1].u));
    sig[3].push_back(h.species[0].T_equil - h.species[1].T_equil);
  }
  EquilibrationReport r;
  const char* names[4] = {"Lambda_1-Theta_1", "Lambda_2-Theta_2", "|u_1-u_2|", "T_1-T_2"};
  for (std::size_t i = 0; i < 4; ++i) r.fits.push_back(fit_signal(names[i], times, sig[i], options.noise_floor));

  // Conserved momentum and energy of the first sample fix the common limit.
  const HomogeneousSample& first = history.front();
  const std::size_t d = static_cast<std::size_t>(model.dim);
  r.mean_velocity = VelocityVector(d, 0.0);
  double rho = 0.0, energy = 0.0, heat_capacity = 0.0;
  for (int k = 0; k < 2; ++k) {
    const MomentSet& m = first.species[static_cast<std::size_t>(k)];
    const double mass = model[k].mass;
    rho += mass * m.n;
    double u2 = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      r.mean_velocity[a] += mass * m.n * m.u[a];
      u2 += m.u[a] * m.u[a];
    }
    energy += 0.5 * (model.dim + model[k].internal_dof) * m.n * m.T_equil + 0.5 * mass * m.n * u2;
    heat_capacity += 0.5 * (model.dim + model[k].internal_dof) * m.n;
  }
  double ubar2 = 0.0;
  for (double& u : r.mean_velocity) {
    u /= rho;
    ubar2 += u * u;
  }
  r.mean_temperature = (energy - 0.5 * rho * ubar2) / heat_capacity;

  const HomogeneousSample& last = history.back();
  for (std::size_t k = 0; k < 2; ++k) {
    const MomentSet& m = last.species[k];
    r.final_velocity_gap = std::max(r.final_velocity_gap, norm_diff(m.u, r.mean_velocity));
    r.final_temperature_gap = std::max(r.final_temperature_gap, std::abs(m.T_equil - r.mean_temperature));
    r.final_internal_gap =
        std::max({r.final_internal_gap, std::abs(m.Lambda - m.Theta), std::abs(m.T_equil - m.Lambda)});
  }
  if (model.species.nu_tilde_21 == 0.0)
    for (int k = 0; k < 2; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      r.analytic_rate[ks] = single_species_rate(model, k, last.species[0].n, last.species[1].n);
      const DecayFit& fit = r.fits[ks];
      if (!fit.trivial && r.analytic_rate[ks] > 0.0)
        r.rate_error[ks] = std::abs(fit.rate - r.analytic_rate[ks]) / r.analytic_rate[ks];
    }
  return r;
}

}  // namespace bgkmix
