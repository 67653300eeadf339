#include "bgkmix/core/mixture.hpp"

#include <sstream>
#include <tuple>

#include "bgkmix/core/errors.hpp"

namespace bgkmix {

std::pair<VelocityVector, VelocityVector> exchange_velocities(const VelocityVector& u1, const VelocityVector& u2,
                                                              const MixtureCouplingParams& params,
                                                              const SpeciesParams& species) {
  const double delta = params.delta;
  const double ratio = species.species[0].mass / species.species[1].mass;
  VelocityVector u12(u1.size());
  VelocityVector u21(u1.size());
  for (std::size_t a = 0; a < u1.size(); ++a) {
    u12[a] = delta * u1[a] + (1.0 - delta) * u2[a];
    u21[a] = u2[a] - ratio * params.epsilon * (1.0 - delta) * (u2[a] - u1[a]);
  }
  return {u12, u21};
}

InternalVector embed_internal(const InternalVector& active, const Species& species, int internal_space_dim) {
  InternalVector full(static_cast<std::size_t>(internal_space_dim));
  const auto comps = species.active_components();
  for (std::size_t b = 0; b < comps.size(); ++b) full[static_cast<std::size_t>(comps[b])] = active[b];
  return full;
}

InternalVector restrict_internal(const InternalVector& full, const Species& species) {
  const auto comps = species.active_components();
  InternalVector out(comps.size());
  for (std::size_t b = 0; b < comps.size(); ++b) out[b] = full[static_cast<std::size_t>(comps[b])];
  return out;
}

std::pair<InternalVector, InternalVector> exchange_eta(const InternalVector& eta1, const InternalVector& eta2,
                                                       const MixtureCouplingParams& params,
                                                       const SpeciesParams& species) {
  const int M = species.internal_space_dim;
  const InternalVector e1 = embed_internal(eta1, species.species[0], M);
  const InternalVector e2 = embed_internal(eta2, species.species[1], M);
  const double beta = params.beta;
  const double ratio = species.species[0].mass / species.species[1].mass;
  InternalVector e12(static_cast<std::size_t>(M));
  InternalVector e21(static_cast<std::size_t>(M));
  for (std::size_t b = 0; b < static_cast<std::size_t>(M); ++b) {
    e12[b] = beta * e1[b] + (1.0 - beta) * e2[b];
    e21[b] = e2[b] - ratio * params.epsilon * (1.0 - beta) * (e2[b] - e1[b]);
  }
  return {restrict_internal(e12, species.species[0]), restrict_internal(e21, species.species[1])};
}

ExchangeSet exchange_quantities(const MomentSet& a, const MomentSet& b, const MixtureCouplingParams& params,
                                const SpeciesParams& species, int dim) noexcept {
  const Species& s1 = species.species[0];
  const Species& s2 = species.species[1];
  const double l1 = s1.internal_dof;
  const double l2 = s2.internal_dof;
  const double mass1 = s1.mass;
  const double eps = params.epsilon;
  const double delta = params.delta;
  const double ratio = mass1 / s2.mass;

  ExchangeSet x;
  x.n12 = a.n;
  x.n21 = b.n;
  std::tie(x.u12, x.u21) = exchange_velocities(a.u, b.u, params, species);
  std::tie(x.eta12, x.eta21) = exchange_eta(a.eta_bar, b.eta_bar, params, species);

  const double du2 = distance_squared(a.u, b.u);
  const int M = species.internal_space_dim;
  const double deta2 =
      distance_squared(embed_internal(a.eta_bar, s1, M), embed_internal(b.eta_bar, s2, M));

  x.Lambda12 = params.alpha * a.Lambda + (1.0 - params.alpha) * b.Lambda + params.gamma * du2;
  x.Theta12 = (l1 * a.Theta + l2 * b.Theta) / (l1 + l2) + params.gamma_tilde * deta2;

  const double bracket = eps * mass1 * (1.0 - delta) * (ratio * eps * (delta - 1.0) + delta + 1.0) / dim - eps * params.gamma;
  x.Lambda21 = bracket * du2 + eps * (1.0 - params.alpha) * a.Lambda + (1.0 - eps * (1.0 - params.alpha)) * b.Lambda;

  const double frac = eps * l1 / (l1 + l2);
  x.Theta21 = frac * a.Theta + (1.0 - frac) * b.Theta - l1 / l2 * eps * params.gamma_tilde * deta2 -
              eps * mass1 / l2 * (x.eta12.norm_squared() - a.eta_bar.norm_squared()) -
              s2.mass / l2 * (x.eta21.norm_squared() - b.eta_bar.norm_squared());

  x.T12 = equilibrium_temperature(x.Lambda12, x.Theta12, s1.internal_dof, dim);
  x.T21 = equilibrium_temperature(x.Lambda21, x.Theta21, s2.internal_dof, dim);
  return x;
}

ExchangeSet exchange_temperatures(const MomentSet& m1, const MomentSet& m2, const MixtureCouplingParams& params,
                                  const SpeciesParams& species, int dim) {
  ExchangeSet x = exchange_quantities(m1, m2, params, species, dim);
  const std::pair<const char*, double> checks[] = {
      {"Lambda_12", x.Lambda12}, {"Lambda_21", x.Lambda21}, {"Theta_12", x.Theta12},
      {"Theta_21", x.Theta21},   {"T_12", x.T12},           {"T_21", x.T21}};
  for (const auto& [name, value] : checks) {
    if (!(value > 0.0)) {
      std::ostringstream os;
      os << "exchange temperature " << name << " = " << value << " is not positive";
      throw NegativeTemperatureError(os.str());
    }
  }
  return x;
}

}  // namespace bgkmix
