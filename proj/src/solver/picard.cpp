#include "bgkmix/solver/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/maxwellian.hpp"
#include "bgkmix/core/mixture.hpp"
#include "bgkmix/core/moments.hpp"
#include "bgkmix/core/norms.hpp"
#include "bgkmix/core/parallel.hpp"
#include "bgkmix/solver/relaxation.hpp"

namespace bgkmix {
namespace {

// Moments of one iterate at every level: levels[j][k][x].
using LevelMoments = std::vector<std::array<std::vector<MomentSet>, 2>>;
// Theta of one iterate at every level: levels[j][k][x].
using LevelTheta = std::vector<std::array<std::vector<double>, 2>>;

// \int_0^dt e^{-A(1 - s/dt)} (S0 (1 - s/dt) + S1 s/dt) ds = w0 S0 + w1 S1.
struct StepWeights {
  double decay, w0, w1;
};

StepWeights step_weights(double A, double dt) noexcept {
  if (A < 1e-4) {
    return {std::exp(-A), dt * (0.5 - A / 3.0 + A * A / 8.0), dt * (0.5 - A / 6.0 + A * A / 24.0)};
  }
  const double e = std::exp(-A);
  return {e, dt * (1.0 - e - A * e) / (A * A), dt * (A - 1.0 + e) / (A * A)};
}

// Sources of one species at one level, built from the lagged moments.
struct LevelSources {
  DistributionField S;  // R1 M_k + R2 M_kj
  DistributionField Q;  // auxiliary source
  std::vector<double> rate;     // R1 + R2 per x
  std::vector<double> aux_rate; // model b: a_M + R2 per x
};

class Marcher {
 public:
  Marcher(const PhysicalModel& model, const PhaseSpaceGrid& grid, const PicardOptions& options)
      : model_(model), grid_(grid), options_(options), nx_(grid.space.size()) {}

  // Lagged macroscopic state of species k at (level, x): n, u, eta_bar from
  // iterate n-1, Theta from iterate n-2 and Lambda from the internal-energy
  // relation with Theta^{n-2} and the temperatures selected in the options.
  MomentSet lagged(const LevelMoments& prev, const LevelMoments& prev2, const LevelTheta& theta, std::size_t j,
                   int k, std::size_t ix) const {
    const auto ks = static_cast<std::size_t>(k);
    const Species& sp = model_[k];
    const int d = model_.dim;
    const int l = sp.internal_dof;
    MomentSet m = prev[j][ks][ix];
    const MomentSet& old =
        options_.lambda_temperatures == LambdaTemperatures::previous_iterate ? prev[j][ks][ix] : prev2[j][ks][ix];
    m.Theta = theta[j][ks][ix];
    m.Lambda = old.T_trans + static_cast<double>(l) / d * (old.T_rot - m.Theta);
    if (!(m.Lambda > 0.0) || !(m.Theta > 0.0)) {
      std::ostringstream os;
      os << "Picard iterate: species " << k + 1 << " at spatial node " << ix << " has Lambda = " << m.Lambda
         << ", Theta = " << m.Theta;
      throw NegativeTemperatureError(os.str());
    }
    m.T_equil = equilibrium_temperature(m.Lambda, m.Theta, l, d);
    return m;
  }

  void build_sources(LevelSources& out, int k, const LevelMoments& prev, const LevelMoments& prev2,
                     const LevelTheta& theta, std::size_t j) const {
    const Species& sp = model_[k];
    const SpeciesGrid& g = grid_[k];
    const bool is_b = model_.variant == ModelVariant::b;
    out.S = DistributionField::for_species(grid_, k);
    out.Q = DistributionField::for_species(grid_, k);
    out.rate.assign(nx_, 0.0);
    out.aux_rate.assign(nx_, 0.0);
    parallel_for(nx_, options_.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t ix = begin; ix < end; ++ix) {
        const MomentSet m1 = lagged(prev, prev2, theta, j, 0, ix);
        const MomentSet m2 = lagged(prev, prev2, theta, j, 1, ix);
        const MomentSet& mk = k == 0 ? m1 : m2;
        const RelaxationRates r = relaxation_rates(model_, k, m1.n, m2.n);
        const double aM = r.self * (model_.dim + sp.internal_dof) / (model_.dim * sp.collision_number);
        out.rate[ix] = r.total();
        out.aux_rate[ix] = aM + r.cross;
        const SeparableMaxwellian own = make_separable(species_params(mk), sp.mass, g);
        const SeparableMaxwellian eq = make_separable(equilibrium_params(mk), sp.mass, g);
        auto S = out.S.node(ix);
        auto Q = out.Q.node(ix);
        if (r.self > 0.0) own.accumulate(S, r.self);
        if (r.cross > 0.0) {
          const ExchangeSet ex = exchange_temperatures(m1, m2, model_.coupling, model_.species, model_.dim);
          const ExchangeMaxwellians p = exchange_params(ex, k);
          make_separable(p.mixed, sp.mass, g).accumulate(S, r.cross);
          if (is_b) make_separable(p.mixed_equilibrium, sp.mass, g).accumulate(Q, r.cross);
        }
        if (aM > 0.0) {
          eq.accumulate(Q, aM);
          // Model a: (nu_kk chi_k / z_k)(M~_k - M_k) with 1/z_k = (d + l)/(d Z_r).
          if (!is_b) own.accumulate(Q, -aM);
        }
      }
    });
  }

  // Per-(x, v) departure values of a per-x scalar after transport over dt.
  std::vector<double> departed(const std::vector<double>& per_x, int k) const {
    const std::size_t nv = grid_[k].velocity_size;
    std::vector<double> cols(nx_ * nv);
    for (std::size_t ix = 0; ix < nx_; ++ix)
      std::fill_n(cols.begin() + static_cast<std::ptrdiff_t>(ix * nv), nv, per_x[ix]);
    advect_columns(cols, 1, grid_[k], grid_.space, options_.dt, options_.advection, options_.threads);
    return cols;
  }

  // Theta of species k from the auxiliary field and the moments of f at one level.
  void extract_theta(std::vector<double>& out, int k, const DistributionField& aux,
                     const std::vector<MomentSet>& mom) const {
    const Species& sp = model_[k];
    const int l = sp.internal_dof;
    out.assign(nx_, 0.0);
    for (std::size_t ix = 0; ix < nx_; ++ix) {
      const InternalMoments a = internal_moments(aux.node(ix), grid_[k], sp.mass);
      double theta;
      if (model_.variant == ModelVariant::b) {
        theta = internal_temperature(a, sp.mass, l);
      } else {
        theta = theta_with_auxiliary(mom[ix], a, sp.mass, l);
      }
      if (!(theta > 0.0)) {
        std::ostringstream os;
        os << "Picard iterate: Theta of species " << k + 1 << " at spatial node " << ix << " became " << theta;
        throw NegativeTemperatureError(os.str());
      }
      out[ix] = theta;
    }
  }

 private:
  const PhysicalModel& model_;
  const PhaseSpaceGrid& grid_;
  const PicardOptions& options_;
  std::size_t nx_;
};

double field_min(const DistributionField& f) noexcept {
  double m = f.values().empty() ? 0.0 : f.values().front();
  for (double v : f.values()) m = std::min(m, v);
  return m;
}

DistributionField sum_fields(const DistributionField& a, const DistributionField& b) {
  DistributionField s = a;
  s += b;
  return s;
}

}  // namespace

std::string_view to_string(LambdaTemperatures choice) noexcept {
  return choice == LambdaTemperatures::previous_iterate ? "previous_iterate" : "two_back";
}

LambdaTemperatures parse_lambda_temperatures(std::string_view text) {
  if (text == "previous_iterate") return LambdaTemperatures::previous_iterate;
  if (text == "two_back") return LambdaTemperatures::two_back;
  throw ConfigError("unknown lambda temperatures '" + std::string(text) + "' (expected previous_iterate or two_back)");
}

std::vector<double> characteristic_integral(const std::vector<std::vector<double>>& rates,
                                            const SpeciesGrid& species_grid, const SpatialGrid& space, double dt,
                                            const AdvectionOptions& options, int threads) {
  if (!(dt > 0.0)) throw ConfigError("characteristic integral needs a positive level spacing");
  const std::size_t nx = space.size();
  const std::size_t nv = species_grid.velocity_size;
  std::vector<double> alpha(nx * nv, 0.0);
  for (const auto& r : rates)
    if (r.size() != nx) throw ConfigError("rate levels must have one value per spatial node");
  for (std::size_t j = 0; j + 1 < rates.size(); ++j) {
    std::vector<double> dep(nx * nv);
    for (std::size_t ix = 0; ix < nx; ++ix)
      std::fill_n(dep.begin() + static_cast<std::ptrdiff_t>(ix * nv), nv, rates[j][ix]);
    advect_columns(dep, 1, species_grid, space, dt, options, threads);
    advect_columns(alpha, 1, species_grid, space, dt, options, threads);
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t iv = 0; iv < nv; ++iv)
        alpha[ix * nv + iv] += 0.5 * dt * (dep[ix * nv + iv] + rates[j + 1][ix]);
  }
  return alpha;
}

PicardResult picard_solve(const KineticState& initial, const PhysicalModel& model, const PhaseSpaceGrid& grid,
                          double t_final, const PicardOptions& options) {
  if (initial.model != model.variant) throw ConfigError("state and physical model disagree on the model variant");
  if (!(options.dt > 0.0)) throw ConfigError("Picard level spacing dt must be positive");
  if (!(t_final > 0.0)) throw ConfigError("Picard t_final must be positive");
  if (options.iterations < 1) throw ConfigError("Picard needs at least one iteration");
  check_advection_options(options.advection);
  const double levels_real = t_final / options.dt;
  const auto J = static_cast<std::size_t>(std::llround(levels_real));
  if (J < 1 || std::abs(levels_real - static_cast<double>(J)) > 1e-9 * std::max(1.0, levels_real))
    throw ConfigError("Picard t_final must be a positive multiple of dt");

  const bool is_b = model.variant == ModelVariant::b;
  const std::size_t nx = grid.space.size();
  const double cell = grid.space.cell_volume();
  const double dt = options.dt;
  Marcher marcher(model, grid, options);

  PicardResult result;
  result.times.resize(J + 1);
  for (std::size_t j = 0; j <= J; ++j) result.times[j] = static_cast<double>(j) * dt;
  result.q = options.q > 0.0
                 ? options.q
                 : model.dim + model[0].internal_dof + model[1].internal_dof + 3.0;

  // Initial moments, Theta and auxiliary fields (g_k = M_k - f_k for model a).
  std::array<std::vector<MomentSet>, 2> mom0;
  std::array<std::vector<double>, 2> theta0;
  std::array<DistributionField, 2> aux0;
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const Species& sp = model[k];
    mom0[ks] = compute_moments(initial.f[ks], sp, grid[k], kDefaultVacuumFloor, options.threads);
    if (is_b) {
      aux0[ks] = initial.maxwellian[ks];
      theta0[ks].resize(nx);
      for (std::size_t ix = 0; ix < nx; ++ix)
        theta0[ks][ix] = internal_temperature(internal_moments(aux0[ks].node(ix), grid[k], sp.mass), sp.mass,
                                              sp.internal_dof);
    } else if (!initial.maxwellian[ks].empty()) {
      // The state already carries g_k (kinetic Theta transport).
      theta0[ks] = initial.theta[ks];
      aux0[ks] = initial.maxwellian[ks];
    } else {
      theta0[ks] = initial.theta[ks];
      aux0[ks] = DistributionField::for_species(grid, k);
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const MomentSet full = with_theta(mom0[ks][ix], theta0[ks][ix], sp, model.dim);
        auto g = aux0[ks].node(ix);
        make_separable(species_params(full), sp.mass, grid[k]).write(g);
        const auto f = initial.f[ks].node(ix);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] -= f[i];
      }
    }
  }

  // Iterates 0..2: the initial data held constant in time.
  LevelMoments prev(J + 1, mom0), prev2(J + 1, mom0);
  LevelTheta theta_lag(J + 1, theta0);

  // Previous iterate at t_final, for the distances (iterate 2 = initial data).
  std::array<DistributionField, 2> last_f = initial.f;
  std::array<DistributionField, 2> last_m;
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    last_m[ks] = is_b ? aux0[ks] : sum_fields(initial.f[ks], aux0[ks]);
  }
  double reference_size = 0.0;
  for (int k = 0; k < 2; ++k)
    reference_size += weighted_l1_distance(initial.f[static_cast<std::size_t>(k)], nullptr, grid[k], cell);
  // A0 / 2 bounds every N_q(f_k^0) and N_q(M_k^0).
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    result.A0 = std::max({result.A0, 2.0 * weighted_sup_norm(initial.f[ks], grid[k], result.q),
                          2.0 * weighted_sup_norm(last_m[ks], grid[k], result.q)});
  }

  KineticState final_state;
  for (int it = 0; it < options.iterations; ++it) {
    PicardTrace trace;
    trace.iteration = 3 + it;
    trace.nq_sum.assign(J + 1, 0.0);
    trace.min_f = field_min(initial.f[0]);
    trace.min_m = field_min(last_m[0]);
    trace.alpha_min = 0.0;
    bool first_alpha = true;

    LevelMoments mom_new(J + 1);
    LevelTheta theta_new(J + 1);
    std::array<DistributionField, 2> final_f, final_m;

    for (int k = 0; k < 2; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      const Species& sp = model[k];
      const SpeciesGrid& g = grid[k];
      const std::size_t nv = g.velocity_size;
      const std::size_t ne = g.internal_size;
      DistributionField f = initial.f[ks];
      DistributionField aux = aux0[ks];
      std::vector<double> alpha(nx * nv, 0.0);

      auto record = [&](std::size_t j) {
        mom_new[j][ks] = compute_moments(f, sp, g, kDefaultVacuumFloor, options.threads);
        marcher.extract_theta(theta_new[j][ks], k, aux, mom_new[j][ks]);
        const DistributionField M = is_b ? aux : sum_fields(f, aux);
        trace.nq_sum[j] += weighted_sup_norm(f, g, result.q) + weighted_sup_norm(M, g, result.q);
        trace.min_f = std::min(trace.min_f, field_min(f));
        trace.min_m = std::min(trace.min_m, field_min(M));
        if (j == J) {
          trace.nq_f[ks] = weighted_sup_norm(f, g, result.q);
          trace.nq_m[ks] = weighted_sup_norm(M, g, result.q);
          final_m[ks] = M;
        }
      };

      LevelSources cur, next;
      marcher.build_sources(cur, k, prev, prev2, theta_lag, 0);
      record(0);
      for (std::size_t j = 0; j < J; ++j) {
        // Departure values along the characteristics.
        advect(f, g, grid.space, dt, options.advection, options.threads);
        advect(cur.S, g, grid.space, dt, options.advection, options.threads);
        advect_columns(alpha, 1, g, grid.space, dt, options.advection, options.threads);
        const std::vector<double> rate_dep = marcher.departed(cur.rate, k);
        AdvectionOptions signed_opts = options.advection;
        signed_opts.limit_positivity = is_b && signed_opts.limit_positivity;
        advect(aux, g, grid.space, dt, signed_opts, options.threads);
        advect(cur.Q, g, grid.space, dt, signed_opts, options.threads);
        std::vector<double> aux_rate_dep;
        if (is_b) aux_rate_dep = marcher.departed(cur.aux_rate, k);

        marcher.build_sources(next, k, prev, prev2, theta_lag, j + 1);
        parallel_for(nx, options.threads, [&](std::size_t begin, std::size_t end) {
          for (std::size_t ix = begin; ix < end; ++ix)
            for (std::size_t iv = 0; iv < nv; ++iv) {
              const std::size_t c = ix * nv + iv;
              const double A = 0.5 * dt * (rate_dep[c] + next.rate[ix]);
              alpha[c] += A;
              const StepWeights w = step_weights(A, dt);
              const std::size_t row = f.index(ix, iv, 0);
              for (std::size_t ie = 0; ie < ne; ++ie)
                f.data()[row + ie] =
                    w.decay * f.data()[row + ie] + w.w0 * cur.S.data()[row + ie] + w.w1 * next.S.data()[row + ie];
              if (is_b) {
                const StepWeights wb = step_weights(0.5 * dt * (aux_rate_dep[c] + next.aux_rate[ix]), dt);
                for (std::size_t ie = 0; ie < ne; ++ie)
                  aux.data()[row + ie] = wb.decay * aux.data()[row + ie] + wb.w0 * cur.Q.data()[row + ie] +
                                         wb.w1 * next.Q.data()[row + ie];
              } else {
                for (std::size_t ie = 0; ie < ne; ++ie)
                  aux.data()[row + ie] += 0.5 * dt * (cur.Q.data()[row + ie] + next.Q.data()[row + ie]);
              }
            }
        });
        std::swap(cur, next);
        record(j + 1);
      }
      for (double a : alpha) {
        if (first_alpha || a < trace.alpha_min) trace.alpha_min = a;
        if (first_alpha || a > trace.alpha_max) trace.alpha_max = a;
        first_alpha = false;
      }
      final_f[ks] = std::move(f);
      if (is_b || !initial.maxwellian[ks].empty()) final_state.maxwellian[ks] = std::move(aux);
    }

    for (int k = 0; k < 2; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      trace.distance += weighted_l1_distance(final_f[ks], &last_f[ks], grid[k], cell) +
                        weighted_l1_distance(final_m[ks], &last_m[ks], grid[k], cell);
    }
    last_f = final_f;
    last_m = final_m;

    final_state.model = model.variant;
    final_state.time = initial.time + t_final;
    final_state.steps = initial.steps + J;
    final_state.f = std::move(final_f);
    if (!is_b) final_state.theta = theta_new[J];

    // Shift the iterate history: the Theta computed here is iterate n-1's.
    prev2 = std::move(prev);
    prev = std::move(mom_new);
    theta_lag = std::move(theta_new);
    result.trace.push_back(std::move(trace));

    if (options.tolerance > 0.0 && result.trace.back().distance < options.tolerance) break;
  }
  result.state = std::move(final_state);

  // Contraction after the burn-in; distances at round-off level are stagnation.
  const double floor = 1e-13 * std::max(reference_size, 1e-300);
  for (std::size_t i = 1; i < result.trace.size(); ++i) {
    const PicardTrace& a = result.trace[i - 1];
    const PicardTrace& b = result.trace[i];
    if (a.iteration < options.burn_in || a.distance <= floor) continue;
    if (!(b.distance < a.distance)) {
      result.non_contraction = true;
      std::ostringstream os;
      os << "Picard distance did not decrease from iterate " << a.iteration << " (" << a.distance << ") to "
         << b.iteration << " (" << b.distance << ")";
      result.warning = os.str();
      break;
    }
  }

  // Gronwall monitor of the N_q sum.
  const std::vector<double>& first = result.trace.front().nq_sum;
  for (std::size_t j = 1; j <= J; ++j)
    if (result.A0 > 0.0 && first[j] > 0.0)
      result.C_q = std::max(result.C_q, std::log(first[j] / (2.0 * result.A0)) / (4.0 * result.times[j]));
  result.envelope_margin = 1.0;
  for (std::size_t i = 1; i < result.trace.size(); ++i)
    for (std::size_t j = 0; j <= J; ++j) {
      const double envelope = 2.0 * result.A0 * std::exp(4.0 * result.C_q * result.times[j]);
      if (envelope <= 0.0) continue;
      const double margin = 1.0 - result.trace[i].nq_sum[j] / envelope;
      result.envelope_margin = std::min(result.envelope_margin, margin);
      if (margin < -1e-12) result.envelope_respected = false;
    }
  return result;
}

}  // namespace bgkmix
