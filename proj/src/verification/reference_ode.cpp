#include "bgkmix/verification/reference_ode.hpp"

#include <boost/numeric/odeint.hpp>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/mixture.hpp"

namespace bgkmix::verification {
namespace {

using State = std::vector<double>;

// Conserved-variable layout per species:
//   n u (d), n eta_bar (l), E_t, E_r, then n Theta (model a) or
//   (n^M, h^M (l), S^M) with S^M = \int m |eta|^2 M (model b).
class MomentEquations {
 public:
  MomentEquations(const PhysicalModel& model, std::array<double, 2> n) : model_(model), n_(n) {
    const CollisionMatrix nu = model.nu_tilde();
    const double total = n[0] + n[1];
    std::size_t off = 0;
    for (std::size_t k = 0; k < 2; ++k) {
      self_[k] = nu[k][k] * n[k] / total;
      cross_[k] = nu[k][1 - k] * n[1 - k] / total;
      base_[k] = off;
      const int l = model.species.species[k].internal_dof;
      off += static_cast<std::size_t>(model.dim + l + 2 + (model.variant == ModelVariant::a ? 1 : l + 2));
    }
    size_ = off;
  }

  std::size_t size() const noexcept { return size_; }

  State pack(const std::array<ReferenceSpecies, 2>& init) const {
    State x(size_);
    const int d = model_.dim;
    for (std::size_t k = 0; k < 2; ++k) {
      const ReferenceSpecies& s = init[k];
      const Species& sp = model_.species.species[k];
      const int l = sp.internal_dof;
      double* p = x.data() + base_[k];
      double u2 = 0.0, e2 = 0.0;
      for (int a = 0; a < d; ++a) {
        const double u = a < static_cast<int>(s.u.size()) ? s.u[static_cast<std::size_t>(a)] : 0.0;
        *p++ = s.n * u;
        u2 += u * u;
      }
      for (int b = 0; b < l; ++b) {
        const double e = b < static_cast<int>(s.eta_bar.size()) ? s.eta_bar[static_cast<std::size_t>(b)] : 0.0;
        *p++ = s.n * e;
        e2 += e * e;
      }
      *p++ = 0.5 * d * s.n * s.T_trans + 0.5 * sp.mass * s.n * u2;
      *p++ = 0.5 * l * s.n * s.T_rot + 0.5 * sp.mass * s.n * e2;
      if (model_.variant == ModelVariant::a) {
        *p = s.n * s.Theta;
      } else {
        *p++ = s.n;
        for (int b = 0; b < l; ++b) *p++ = s.n * (b < static_cast<int>(s.eta_bar.size()) ? s.eta_bar[static_cast<std::size_t>(b)] : 0.0);
        *p = s.n * (l * s.Theta + sp.mass * e2);
      }
    }
    return x;
  }

  MomentSet unpack(const State& x, std::size_t k) const {
    const int d = model_.dim;
    const Species& sp = model_.species.species[k];
    const int l = sp.internal_dof;
    const double n = n_[k];
    const double* p = x.data() + base_[k];
    MomentSet m;
    m.n = n;
    m.u = VelocityVector(static_cast<std::size_t>(d));
    m.eta_bar = InternalVector(static_cast<std::size_t>(l));
    for (int a = 0; a < d; ++a) m.u[static_cast<std::size_t>(a)] = p[a] / n;
    for (int b = 0; b < l; ++b) m.eta_bar[static_cast<std::size_t>(b)] = p[d + b] / n;
    const double Et = p[d + l];
    const double Er = p[d + l + 1];
    m.T_trans = (2.0 * Et - sp.mass * n * m.u.norm_squared()) / (d * n);
    m.T_rot = (2.0 * Er - sp.mass * n * m.eta_bar.norm_squared()) / (l * n);
    const double* aux = p + d + l + 2;
    if (model_.variant == ModelVariant::a) {
      m.Theta = aux[0] / n;
    } else {
      const double nM = aux[0];
      double h2 = 0.0;
      for (int b = 0; b < l; ++b) h2 += aux[1 + b] * aux[1 + b];
      m.Theta = (aux[1 + l] - sp.mass * h2 / nM) / (l * nM);
    }
    m.Lambda = m.T_trans + static_cast<double>(l) / d * (m.T_rot - m.Theta);
    m.T_equil = (d * m.Lambda + l * m.Theta) / (d + l);
    return m;
  }

  void operator()(const State& x, State& dxdt, double /*t*/) const {
    const int d = model_.dim;
    const std::array<MomentSet, 2> m{unpack(x, 0), unpack(x, 1)};
    const ExchangeSet ex = exchange_quantities(m[0], m[1], model_.coupling, model_.species, d);
    for (std::size_t k = 0; k < 2; ++k) {
      const Species& sp = model_.species.species[k];
      const int l = sp.internal_dof;
      const MomentSet& mk = m[k];
      const double n = mk.n;
      const double R1 = self_[k];
      const double R2 = cross_[k];
      const VelocityVector& ukj = k == 0 ? ex.u12 : ex.u21;
      const InternalVector& ekj = k == 0 ? ex.eta12 : ex.eta21;
      const double Lkj = k == 0 ? ex.Lambda12 : ex.Lambda21;
      const double Tkj_r = k == 0 ? ex.Theta12 : ex.Theta21;
      const double Tkj = k == 0 ? ex.T12 : ex.T21;
      const double* p = x.data() + base_[k];
      double* q = dxdt.data() + base_[k];
      for (int a = 0; a < d; ++a) q[a] = R2 * n * (ukj[static_cast<std::size_t>(a)] - mk.u[static_cast<std::size_t>(a)]);
      for (int b = 0; b < l; ++b)
        q[d + b] = R2 * n * (ekj[static_cast<std::size_t>(b)] - mk.eta_bar[static_cast<std::size_t>(b)]);
      const double Et = p[d + l];
      const double Er = p[d + l + 1];
      q[d + l] = R1 * (0.5 * d * n * mk.Lambda + 0.5 * sp.mass * n * mk.u.norm_squared() - Et) +
                 R2 * (0.5 * d * n * Lkj + 0.5 * sp.mass * n * ukj.norm_squared() - Et);
      q[d + l + 1] = R1 * (0.5 * l * n * mk.Theta + 0.5 * sp.mass * n * mk.eta_bar.norm_squared() - Er) +
                     R2 * (0.5 * l * n * Tkj_r + 0.5 * sp.mass * n * ekj.norm_squared() - Er);
      const double* aux = p + d + l + 2;
      double* daux = q + d + l + 2;
      const double Zr = sp.collision_number;
      if (model_.variant == ModelVariant::a) {
        daux[0] = R1 / Zr * n * (mk.Lambda - mk.Theta) + R1 * n * (mk.Theta - mk.T_rot) + R2 * n * (Tkj_r - mk.T_rot);
      } else {
        const double aM = R1 / Zr * (d + l) / d;
        daux[0] = (aM + R2) * (n - aux[0]);
        for (int b = 0; b < l; ++b)
          daux[1 + b] = aM * (n * mk.eta_bar[static_cast<std::size_t>(b)] - aux[1 + b]) +
                        R2 * (n * ekj[static_cast<std::size_t>(b)] - aux[1 + b]);
        daux[1 + l] = aM * (n * (l * mk.T_equil + sp.mass * mk.eta_bar.norm_squared()) - aux[1 + l]) +
                      R2 * (n * (l * Tkj + sp.mass * ekj.norm_squared()) - aux[1 + l]);
      }
    }
  }

 private:
  const PhysicalModel& model_;
  std::array<double, 2> n_;
  std::array<double, 2> self_{}, cross_{};
  std::array<std::size_t, 2> base_{};
  std::size_t size_ = 0;
};

}  // namespace

std::vector<ReferenceSample> reference_relaxation(const PhysicalModel& model,
                                                  const std::array<ReferenceSpecies, 2>& initial,
                                                  const std::vector<double>& times, const ReferenceOptions& options) {
  namespace odeint = boost::numeric::odeint;
  if (times.empty()) return {};
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1]))
      throw ConfigError("reference sample times must be ascending and non-negative");

  const MomentEquations eq(model, {initial[0].n, initial[1].n});
  State x = eq.pack(initial);
  std::vector<ReferenceSample> out;
  out.reserve(times.size());
  auto observe = [&](const State& s, double t) {
    out.push_back({t, {eq.unpack(s, 0), eq.unpack(s, 1)}});
  };

  // integrate_times starts at times.front(); prepend 0 when needed.
  std::vector<double> grid = times;
  const bool prepend = grid.front() > 0.0;
  if (prepend) grid.insert(grid.begin(), 0.0);
  auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_times(stepper, eq, x, grid.begin(), grid.end(), 1e-3, observe);
  if (prepend) out.erase(out.begin());
  return out;
}

}  // namespace bgkmix::verification
