#include "bgkmix/solver/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/maxwellian.hpp"
#include "bgkmix/core/mixture.hpp"
#include "bgkmix/core/parallel.hpp"

namespace bgkmix {
namespace {

// Three-point Gauss-Legendre rule on [0, 1].
const double kGaussNodes[3] = {0.5 - std::sqrt(0.15), 0.5, 0.5 + std::sqrt(0.15)};
const double kGaussWeights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

// Weights c_i >= 0 for \int_0^dt e^{-rate (dt - s)} S(s) ds ~ sum c_i S(s_i),
// rescaled so constants integrate exactly (keeps mass exact and the update a
// convex combination).
std::vector<double> exponential_weights(double rate, double dt, const std::vector<double>& times,
                                        const std::vector<double>& base) {
  const double exact = rate > 0.0 ? -std::expm1(-rate * dt) / rate : dt;
  std::vector<double> c(times.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    c[i] = base[i] * std::exp(-rate * (dt - times[i]));
    sum += c[i];
  }
  for (double& v : c) v *= exact / sum;
  return c;
}

// Closed moment system of both species at one spatial node. Per species the
// state is (u, eta_bar, T_trans, T_rot, aux) with aux = Theta (model a) or the
// raw moments (n, h, S) of the M field (model b). Densities are constant.
class NodeSystem {
 public:
  NodeSystem(const PhysicalModel& model, const std::array<double, 2>& n) : model_(model), n_(n) {
    d_ = model.dim;
    std::size_t off = 0;
    for (int k = 0; k < 2; ++k) {
      const int l = model[k].internal_dof;
      base_[static_cast<std::size_t>(k)] = off;
      off += static_cast<std::size_t>(d_ + l + 2 + (model.variant == ModelVariant::a ? 1 : l + 2));
      rates_[static_cast<std::size_t>(k)] = relaxation_rates(model, k, n[0], n[1]);
    }
    size_ = off;
  }

  std::size_t size() const noexcept { return size_; }
  const RelaxationRates& rates(int k) const noexcept { return rates_[static_cast<std::size_t>(k)]; }

  // Rate of the internal relaxation of the M field (model b), a_M.
  double m_field_rate(int k) const noexcept {
    const Species& s = model_[k];
    return rates(k).self * (d_ + s.internal_dof) / (d_ * s.collision_number);
  }

  double fastest_rate() const noexcept {
    double r = 0.0;
    for (int k = 0; k < 2; ++k) {
      const double self = rates(k).self;
      r = std::max(r, rates(k).total() + self * (1.0 + 1.0 / model_[k].collision_number) + m_field_rate(k));
    }
    return r;
  }

  void pack(std::vector<double>& y, int k, const MomentSet& m, double theta, const InternalMoments* aux) const {
    const int l = model_[k].internal_dof;
    double* p = y.data() + base_[static_cast<std::size_t>(k)];
    for (int a = 0; a < d_; ++a) *p++ = m.u[static_cast<std::size_t>(a)];
    for (int b = 0; b < l; ++b) *p++ = m.eta_bar[static_cast<std::size_t>(b)];
    *p++ = m.T_trans;
    *p++ = m.T_rot;
    if (model_.variant == ModelVariant::a) {
      *p = theta;
    } else {
      *p++ = aux->n;
      for (int b = 0; b < l; ++b) *p++ = aux->h[static_cast<std::size_t>(b)];
      *p = aux->S;
    }
  }

  MomentSet moments(const std::vector<double>& y, int k) const {
    const Species& s = model_[k];
    const int l = s.internal_dof;
    const double* p = y.data() + base_[static_cast<std::size_t>(k)];
    MomentSet m;
    m.n = n_[static_cast<std::size_t>(k)];
    m.u = VelocityVector(static_cast<std::size_t>(d_));
    for (int a = 0; a < d_; ++a) m.u[static_cast<std::size_t>(a)] = *p++;
    m.eta_bar = InternalVector(static_cast<std::size_t>(l));
    for (int b = 0; b < l; ++b) m.eta_bar[static_cast<std::size_t>(b)] = *p++;
    m.T_trans = *p++;
    m.T_rot = *p++;
    if (model_.variant == ModelVariant::a) {
      m.Theta = *p;
    } else {
      InternalMoments aux;
      aux.n = *p++;
      aux.h = InternalVector(static_cast<std::size_t>(l));
      for (int b = 0; b < l; ++b) aux.h[static_cast<std::size_t>(b)] = *p++;
      aux.S = *p;
      m.Theta = internal_temperature(aux, s.mass, l);
    }
    m.Lambda = m.T_trans + static_cast<double>(l) / d_ * (m.T_rot - m.Theta);
    m.T_equil = equilibrium_temperature(m.Lambda, m.Theta, l, d_);
    return m;
  }

  ExchangeSet exchange(const MomentSet& m1, const MomentSet& m2) const {
    return exchange_quantities(m1, m2, model_.coupling, model_.species, d_);
  }

  void rhs(const std::vector<double>& y, std::vector<double>& dy) const {
    const std::array<MomentSet, 2> m{moments(y, 0), moments(y, 1)};
    const ExchangeSet x = exchange(m[0], m[1]);
    for (int k = 0; k < 2; ++k) {
      const Species& s = model_[k];
      const int l = s.internal_dof;
      const MomentSet& mk = m[static_cast<std::size_t>(k)];
      const ExchangeMaxwellians ex = exchange_params(x, k);
      const MaxwellianParams& mix = ex.mixed;
      const double self = rates(k).self;
      const double cross = rates(k).cross;
      double* q = dy.data() + base_[static_cast<std::size_t>(k)];
      for (int a = 0; a < d_; ++a)
        *q++ = cross * (mix.u[static_cast<std::size_t>(a)] - mk.u[static_cast<std::size_t>(a)]);
      for (int b = 0; b < l; ++b)
        *q++ = cross * (mix.eta_bar[static_cast<std::size_t>(b)] - mk.eta_bar[static_cast<std::size_t>(b)]);
      const double du2 = distance_squared(mix.u, mk.u);
      const double de2 = distance_squared(mix.eta_bar, mk.eta_bar);
      *q++ = self * (mk.Lambda - mk.T_trans) + cross * (mix.Lambda - mk.T_trans + s.mass / d_ * du2);
      *q++ = self * (mk.Theta - mk.T_rot) + cross * (mix.Theta - mk.T_rot + s.mass / l * de2);
      if (model_.variant == ModelVariant::a) {
        *q = self / s.collision_number * (mk.Lambda - mk.Theta) + self * (mk.Theta - mk.T_rot) +
             cross * (mix.Theta - mk.T_rot);
      } else {
        const double* p = y.data() + base_[static_cast<std::size_t>(k)] + d_ + l + 2;
        const double aM = m_field_rate(k);
        const double n = mk.n;
        const double T_kj = ex.mixed_equilibrium.Lambda;
        *q++ = (aM + cross) * (n - p[0]);
        for (int b = 0; b < l; ++b)
          *q++ = aM * (n * mk.eta_bar[static_cast<std::size_t>(b)] - p[1 + b]) +
                 cross * (n * mix.eta_bar[static_cast<std::size_t>(b)] - p[1 + b]);
        *q = aM * (l * n * mk.T_equil + s.mass * n * mk.eta_bar.norm_squared() - p[1 + l]) +
             cross * (l * n * T_kj + s.mass * n * mix.eta_bar.norm_squared() - p[1 + l]);
      }
    }
  }

  void integrate(std::vector<double>& y, double span, double resolution) const {
    if (span <= 0.0) return;
    const int steps = std::max(1, static_cast<int>(std::ceil(span * fastest_rate() / resolution)));
    const double h = span / steps;
    std::vector<double> k1(size_), k2(size_), k3(size_), k4(size_), tmp(size_);
    for (int s = 0; s < steps; ++s) {
      rhs(y, k1);
      for (std::size_t i = 0; i < size_; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
      rhs(tmp, k2);
      for (std::size_t i = 0; i < size_; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
      rhs(tmp, k3);
      for (std::size_t i = 0; i < size_; ++i) tmp[i] = y[i] + h * k3[i];
      rhs(tmp, k4);
      for (std::size_t i = 0; i < size_; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }

 private:
  const PhysicalModel& model_;
  std::array<double, 2> n_;
  int d_ = 1;
  std::array<std::size_t, 2> base_{};
  std::array<RelaxationRates, 2> rates_{};
  std::size_t size_ = 0;
};

void require_positive(const MaxwellianParams& p, const char* what, int k, std::size_t node) {
  if (p.Lambda > 0.0 && p.Theta > 0.0) return;
  std::ostringstream os;
  os << what << " of species " << k + 1 << " at spatial node " << node << " has non-positive temperature (Lambda="
     << p.Lambda << ", Theta=" << p.Theta << ")";
  throw NegativeTemperatureError(os.str());
}

void check_exponent(double exponent, double limit, const char* what, std::size_t node) {
  if (exponent <= limit) return;
  std::ostringstream os;
  os << what << " relaxation exponent " << exponent << " at spatial node " << node << " exceeds " << limit
     << "; reduce dt";
  throw StepSizeError(os.str());
}

struct NodeResult {
  double exponent = 0.0;
  double min_density = 0.0;
};

NodeResult relax_node(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid, double dt,
                      const RelaxationOptions& options, std::size_t ix) {
  const bool is_b = model.variant == ModelVariant::b;
  std::array<MomentSet, 2> start;
  std::array<InternalMoments, 2> aux;
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    start[ks] = node_moments(state.f[ks].node(ix), grid[k], model[k].mass, options.n_floor, ix);
    if (is_b) aux[ks] = internal_moments(state.maxwellian[ks].node(ix), grid[k], model[k].mass);
  }

  NodeSystem sys(model, {start[0].n, start[1].n});
  NodeResult result;
  result.min_density = std::min(start[0].n, start[1].n);
  for (int k = 0; k < 2; ++k) {
    const double a = sys.rates(k).total() * dt;
    check_exponent(a, options.max_exponent, "kinetic", ix);
    result.exponent = std::max(result.exponent, a);
    if (is_b) {
      const double b = (sys.m_field_rate(k) + sys.rates(k).cross) * dt;
      check_exponent(b, options.max_exponent, "M-field", ix);
      result.exponent = std::max(result.exponent, b);
    }
  }

  std::vector<double> y(sys.size());
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const double theta = is_b ? 0.0 : state.theta[ks][ix];
    sys.pack(y, k, start[ks], theta, is_b ? &aux[ks] : nullptr);
  }

  // Sample the moment trajectory at the quadrature times.
  std::vector<double> times, base;
  std::vector<std::vector<double>> samples;
  std::vector<double> y_end = y;
  if (options.scheme == RelaxationScheme::moment_ode) {
    double t = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double s = kGaussNodes[i] * dt;
      sys.integrate(y_end, s - t, options.ode_resolution);
      t = s;
      times.push_back(s);
      base.push_back(kGaussWeights[i] * dt);
      samples.push_back(y_end);
    }
    sys.integrate(y_end, dt - t, options.ode_resolution);
  } else {
    times.push_back(0.0);
    base.push_back(dt);
    samples.push_back(y);
    std::vector<double> dy(sys.size());
    sys.rhs(y, dy);
    for (std::size_t i = 0; i < y.size(); ++i) y_end[i] += dt * dy[i];
  }

  // Maxwellian parameters at every sample.
  const std::size_t ns = samples.size();
  std::vector<std::array<MomentSet, 2>> mom(ns);
  std::vector<ExchangeSet> ex(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    mom[i] = {sys.moments(samples[i], 0), sys.moments(samples[i], 1)};
    ex[i] = sys.exchange(mom[i][0], mom[i][1]);
  }

  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const Species& sp = model[k];
    const RelaxationRates& r = sys.rates(k);
    const double A = r.total();
    // Model a with kinetic Theta transport carries g_k = M_k - f_k.
    const bool carries_g = !is_b && !state.maxwellian[ks].empty();
    auto f = state.f[ks].node(ix);
    const std::vector<double> c = exponential_weights(A, dt, times, base);
    const double decay = std::exp(-A * dt);
    // Build this species' Maxwellians before touching its node values.
    std::vector<SeparableMaxwellian> own, cross, own_eq, cross_eq;
    for (std::size_t i = 0; i < ns; ++i) {
      const MaxwellianParams p_own = species_params(mom[i][ks]);
      const ExchangeMaxwellians p_ex = exchange_params(ex[i], k);
      if (r.self > 0.0 || is_b || carries_g) {
        require_positive(p_own, "M_k", k, ix);
        own.push_back(make_separable(p_own, sp.mass, grid[k]));
      }
      if (r.cross > 0.0) {
        require_positive(p_ex.mixed, "M_kj", k, ix);
        cross.push_back(make_separable(p_ex.mixed, sp.mass, grid[k]));
      }
      if (is_b || carries_g) {
        const MaxwellianParams p_eq{p_own.n, p_own.u, p_own.eta_bar, mom[i][ks].T_equil, mom[i][ks].T_equil};
        require_positive(p_eq, "M~_k", k, ix);
        own_eq.push_back(make_separable(p_eq, sp.mass, grid[k]));
        if (is_b && r.cross > 0.0) {
          require_positive(p_ex.mixed_equilibrium, "M~_kj", k, ix);
          cross_eq.push_back(make_separable(p_ex.mixed_equilibrium, sp.mass, grid[k]));
        }
      }
    }

    for (double& v : f) v *= decay;
    for (std::size_t i = 0; i < ns; ++i) {
      if (r.self > 0.0) own[i].accumulate(f, c[i] * r.self);
      if (r.cross > 0.0) cross[i].accumulate(f, c[i] * r.cross);
    }

    if (is_b) {
      const double aM = sys.m_field_rate(k);
      const double B = aM + r.cross;
      const std::vector<double> cm = exponential_weights(B, dt, times, base);
      const double decay_m = std::exp(-B * dt);
      auto M = state.maxwellian[ks].node(ix);
      for (double& v : M) v *= decay_m;
      for (std::size_t i = 0; i < ns; ++i) {
        if (aM > 0.0) own_eq[i].accumulate(M, cm[i] * aM);
        if (r.cross > 0.0) cross_eq[i].accumulate(M, cm[i] * r.cross);
      }
    } else if (carries_g) {
      // dg/dt = a_M (M~_k - M_k) has no loss term; Theta is read back from g + f.
      const double aM = sys.m_field_rate(k);
      auto g = state.maxwellian[ks].node(ix);
      for (std::size_t i = 0; i < ns && aM > 0.0; ++i) {
        own_eq[i].accumulate(g, base[i] * aM);
        own[i].accumulate(g, -base[i] * aM);
      }
      const MomentSet now = node_moments(f, grid[k], sp.mass, options.n_floor, ix);
      const double theta = theta_with_auxiliary(now, internal_moments(g, grid[k], sp.mass), sp.mass, sp.internal_dof);
      if (!(theta > 0.0)) {
        std::ostringstream os;
        os << "Theta of species " << k + 1 << " at spatial node " << ix << " became " << theta;
        throw NegativeTemperatureError(os.str());
      }
      state.theta[ks][ix] = theta;
    } else {
      const double theta = sys.moments(y_end, k).Theta;
      if (!(theta > 0.0)) {
        std::ostringstream os;
        os << "Theta of species " << k + 1 << " at spatial node " << ix << " became " << theta;
        throw NegativeTemperatureError(os.str());
      }
      state.theta[ks][ix] = theta;
    }
  }
  return result;
}

}  // namespace

std::string_view to_string(RelaxationScheme scheme) noexcept {
  return scheme == RelaxationScheme::moment_ode ? "moment_ode" : "frozen";
}

RelaxationScheme parse_relaxation_scheme(std::string_view text) {
  if (text == "moment_ode") return RelaxationScheme::moment_ode;
  if (text == "frozen") return RelaxationScheme::frozen;
  throw ConfigError("unknown relaxation scheme '" + std::string(text) + "' (expected moment_ode or frozen)");
}

RelaxationRates relaxation_rates(const PhysicalModel& model, int k, double n1, double n2) noexcept {
  const CollisionMatrix nu = model.nu_tilde();
  const double total = n1 + n2;
  const double chi_k = (k == 0 ? n1 : n2) / total;
  const double chi_j = (k == 0 ? n2 : n1) / total;
  const auto ks = static_cast<std::size_t>(k);
  return {nu[ks][ks] * chi_k, nu[ks][1 - ks] * chi_j};
}

RelaxationReport relax(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid, double dt,
                       const RelaxationOptions& options, int threads) {
  if (!(dt > 0.0)) throw ConfigError("relaxation time step must be positive");
  if (state.model != model.variant) throw ConfigError("state and physical model disagree on the model variant");
  const std::size_t nx = grid.space.size();
  std::vector<NodeResult> results(nx);
  parallel_for(nx, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t ix = begin; ix < end; ++ix) results[ix] = relax_node(state, model, grid, dt, options, ix);
  });
  RelaxationReport report;
  report.min_density = nx > 0 ? results[0].min_density : 0.0;
  for (const NodeResult& r : results) {
    report.max_exponent = std::max(report.max_exponent, r.exponent);
    report.min_density = std::min(report.min_density, r.min_density);
  }
  return report;
}

RelaxationReport relax_step_model_a(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid,
                                    double dt, const RelaxationOptions& options, int threads) {
  if (state.model != ModelVariant::a) throw ConfigError("relax_step_model_a called on a model b state");
  return relax(state, model, grid, dt, options, threads);
}

RelaxationReport relax_step_model_b(KineticState& state, const PhysicalModel& model, const PhaseSpaceGrid& grid,
                                    double dt, const RelaxationOptions& options, int threads) {
  if (state.model != ModelVariant::b) throw ConfigError("relax_step_model_b called on a model a state");
  return relax(state, model, grid, dt, options, threads);
}

}  // namespace bgkmix
