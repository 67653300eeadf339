#include "bgkmix/core/moments.hpp"

#include <sstream>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/parallel.hpp"

namespace bgkmix {

MomentSet node_moments(std::span<const double> values, const SpeciesGrid& grid, double mass, double n_floor,
                       std::size_t node) {
  const std::size_t nv = grid.velocity_size;
  const std::size_t ne = grid.internal_size;
  const int d = grid.dim;
  const int l = grid.internal_dof;

  // Marginals over eta (per v) and over v (per eta), fixed summation order.
  std::vector<double> rho_v(nv, 0.0);
  std::vector<double> rho_e(ne, 0.0);
  for (std::size_t iv = 0; iv < nv; ++iv) {
    const double* row = values.data() + iv * ne;
    double s = 0.0;
    for (std::size_t ie = 0; ie < ne; ++ie) {
      s += row[ie];
      rho_e[ie] += row[ie];
    }
    rho_v[iv] = s;
  }

  const double wv = grid.velocity_weight();
  const double we = grid.internal_weight();
  MomentSet m;
  double sum = 0.0;
  for (double r : rho_v) sum += r;
  m.n = sum * wv * we;
  if (!(m.n >= n_floor)) {
    std::ostringstream os;
    os << "vacuum at spatial node " << node << ": n = " << m.n;
    throw VacuumError(os.str(), node, m.n);
  }

  m.u = VelocityVector(static_cast<std::size_t>(d));
  for (std::size_t iv = 0; iv < nv; ++iv)
    for (int a = 0; a < d; ++a) m.u[static_cast<std::size_t>(a)] += grid.velocity(iv, a) * rho_v[iv];
  m.u *= 1.0 / sum;

  m.eta_bar = InternalVector(static_cast<std::size_t>(l));
  for (std::size_t ie = 0; ie < ne; ++ie)
    for (int b = 0; b < l; ++b) m.eta_bar[static_cast<std::size_t>(b)] += grid.internal(ie, b) * rho_e[ie];
  m.eta_bar *= 1.0 / sum;

  double trace = 0.0;
  for (std::size_t iv = 0; iv < nv; ++iv) {
    double c[kMaxDimension];
    for (int a = 0; a < d; ++a) c[a] = grid.velocity(iv, a) - m.u[static_cast<std::size_t>(a)];
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) m.P[static_cast<std::size_t>(a * d + b)] += c[a] * c[b] * rho_v[iv];
  }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) m.P[static_cast<std::size_t>(a * d + b)] *= mass * wv * we;
  for (int a = 0; a < d; ++a) trace += m.P[static_cast<std::size_t>(a * d + a)];
  m.T_trans = trace / (d * m.n);

  double rot = 0.0;
  for (std::size_t ie = 0; ie < ne; ++ie) {
    double s = 0.0;
    for (int b = 0; b < l; ++b) {
      const double c = grid.internal(ie, b) - m.eta_bar[static_cast<std::size_t>(b)];
      s += c * c;
    }
    rot += s * rho_e[ie];
  }
  m.T_rot = mass * rot * wv * we / (l * m.n);
  return m;
}

std::vector<MomentSet> compute_moments(const DistributionField& f, const Species& species, const SpeciesGrid& grid,
                                       double n_floor, int threads) {
  std::vector<MomentSet> out(f.space_size());
  parallel_for(f.space_size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t ix = begin; ix < end; ++ix) out[ix] = node_moments(f.node(ix), grid, species.mass, n_floor, ix);
  });
  return out;
}

SpeciesTotals species_totals(const DistributionField& f, const Species& species, const SpeciesGrid& grid,
                             double cell_volume, int threads) {
  const std::size_t nx = f.space_size();
  const std::size_t nv = grid.velocity_size;
  const std::size_t ne = grid.internal_size;
  const int d = grid.dim;
  const std::size_t stride = static_cast<std::size_t>(d) + 2;
  // Per node: mass, momentum components, energy.
  std::vector<double> partial(nx * stride, 0.0);
  std::vector<double> eta2(ne, 0.0);
  for (std::size_t ie = 0; ie < ne; ++ie)
    for (int b = 0; b < grid.internal_dof; ++b) eta2[ie] += grid.internal(ie, b) * grid.internal(ie, b);
  parallel_for(nx, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t ix = begin; ix < end; ++ix) {
      const auto values = f.node(ix);
      double* out = partial.data() + ix * stride;
      for (std::size_t iv = 0; iv < nv; ++iv) {
        const double* row = values.data() + iv * ne;
        double s0 = 0.0, s2 = 0.0;
        for (std::size_t ie = 0; ie < ne; ++ie) {
          s0 += row[ie];
          s2 += eta2[ie] * row[ie];
        }
        double v2 = 0.0;
        for (int a = 0; a < d; ++a) {
          const double v = grid.velocity(iv, a);
          out[1 + a] += v * s0;
          v2 += v * v;
        }
        out[0] += s0;
        out[d + 1] += v2 * s0 + s2;
      }
    }
  });
  const double w = grid.weight() * cell_volume;
  SpeciesTotals t;
  t.momentum = VelocityVector(static_cast<std::size_t>(d));
  for (std::size_t ix = 0; ix < nx; ++ix) {
    const double* p = partial.data() + ix * stride;
    t.mass += p[0];
    for (int a = 0; a < d; ++a) t.momentum[static_cast<std::size_t>(a)] += p[1 + a];
    t.energy += p[d + 1];
  }
  t.mass *= w;
  t.momentum *= species.mass * w;
  t.energy *= 0.5 * species.mass * w;
  return t;
}

InternalMoments internal_moments(std::span<const double> values, const SpeciesGrid& grid, double mass) {
  const std::size_t nv = grid.velocity_size;
  const std::size_t ne = grid.internal_size;
  const int l = grid.internal_dof;
  std::vector<double> rho_e(ne, 0.0);
  for (std::size_t iv = 0; iv < nv; ++iv) {
    const double* row = values.data() + iv * ne;
    for (std::size_t ie = 0; ie < ne; ++ie) rho_e[ie] += row[ie];
  }
  InternalMoments m;
  m.h = InternalVector(static_cast<std::size_t>(l));
  for (std::size_t ie = 0; ie < ne; ++ie) {
    double e2 = 0.0;
    for (int b = 0; b < l; ++b) {
      const double e = grid.internal(ie, b);
      m.h[static_cast<std::size_t>(b)] += e * rho_e[ie];
      e2 += e * e;
    }
    m.n += rho_e[ie];
    m.S += e2 * rho_e[ie];
  }
  const double w = grid.weight();
  m.n *= w;
  m.h *= w;
  m.S *= mass * w;
  return m;
}

double internal_temperature(const InternalMoments& m, double mass, int internal_dof) noexcept {
  return (m.S - mass * m.h.norm_squared() / m.n) / (internal_dof * m.n);
}

double theta_with_auxiliary(const MomentSet& f_moments, const InternalMoments& g, double mass,
                            int internal_dof) noexcept {
  double hb = 0.0;
  for (std::size_t b = 0; b < g.h.size(); ++b) hb += f_moments.eta_bar[b] * g.h[b];
  const double spread = g.S - 2.0 * mass * hb + mass * f_moments.eta_bar.norm_squared() * g.n;
  return f_moments.T_rot + spread / (internal_dof * f_moments.n);
}

double lambda_from_internal(double T_trans, double T_rot, double Theta, const Species& species, int dim) {
  const double lambda = T_trans + static_cast<double>(species.internal_dof) / dim * (T_rot - Theta);
  if (!(lambda > 0.0)) {
    std::ostringstream os;
    os << "Lambda = " << lambda << " <= 0 (T_trans=" << T_trans << ", T_rot=" << T_rot << ", Theta=" << Theta << ")";
    throw NegativeTemperatureError(os.str());
  }
  return lambda;
}

double equilibrium_temperature(double Lambda, double Theta, int internal_dof, int dim) noexcept {
  return (dim * Lambda + internal_dof * Theta) / (dim + internal_dof);
}

MomentSet with_theta(MomentSet m, double Theta, const Species& species, int dim) {
  if (!(Theta > 0.0)) throw NegativeTemperatureError("Theta must be positive");
  m.Theta = Theta;
  m.Lambda = lambda_from_internal(m.T_trans, m.T_rot, Theta, species, dim);
  m.T_equil = equilibrium_temperature(m.Lambda, m.Theta, species.internal_dof, dim);
  return m;
}

}  // namespace bgkmix
