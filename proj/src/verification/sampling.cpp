#include "bgkmix/verification/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bgkmix/core/mixture.hpp"
#include "bgkmix/core/validation.hpp"

namespace bgkmix::verification {

MixtureCouplingParams random_admissible(std::mt19937_64& rng, const SpeciesParams& species, int dim) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double l1 = species.species[0].internal_dof;
  const double l2 = species.species[1].internal_dof;
  MixtureCouplingParams p;
  p.epsilon = (l1 + l2) / l1 * (0.02 + 0.98 * unit(rng));
  const double alpha_lo = p.epsilon > 1.0 ? 1.0 - 1.0 / p.epsilon : 0.0;
  p.alpha = alpha_lo + (1.0 - alpha_lo) * unit(rng);
  const double lo = mixing_weight_lower_bound(p, species);
  p.delta = lo + (1.0 - lo) * unit(rng);
  p.beta = lo + (1.0 - lo) * unit(rng);
  p.gamma = gamma_upper_bound(p, species, dim) * unit(rng);
  p.gamma_tilde = gamma_tilde_upper_bound(p, species) * unit(rng);
  return p;
}

ExchangeCase random_exchange_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> dof(1, 3);
  std::uniform_int_distribution<int> dims(1, 3);
  ExchangeCase c;
  c.dim = dims(rng);
  c.species.internal_space_dim = 3;
  for (auto& sp : c.species.species) {
    sp.mass = 0.2 + 5.0 * unit(rng);
    sp.internal_dof = dof(rng);
    std::vector<int> comps{0, 1, 2};
    std::shuffle(comps.begin(), comps.end(), rng);
    comps.resize(static_cast<std::size_t>(sp.internal_dof));
    std::sort(comps.begin(), comps.end());
    sp.internal_components = comps;
  }
  c.params = random_admissible(rng, c.species, c.dim);
  auto moments = [&](int l) {
    MomentSet m;
    m.n = 0.01 + 5.0 * unit(rng);
    m.u = VelocityVector(static_cast<std::size_t>(c.dim));
    for (auto& x : m.u) x = -3.0 + 6.0 * unit(rng);
    m.eta_bar = InternalVector(static_cast<std::size_t>(l));
    for (auto& x : m.eta_bar) x = -2.0 + 4.0 * unit(rng);
    m.Lambda = 1e-3 + 3.0 * unit(rng);
    m.Theta = 1e-3 + 3.0 * unit(rng);
    return m;
  };
  c.m1 = moments(c.species.species[0].internal_dof);
  c.m2 = moments(c.species.species[1].internal_dof);
  return c;
}

ClosureResiduals closure_residuals(const ExchangeCase& c) {
  const ExchangeSet x = exchange_quantities(c.m1, c.m2, c.params, c.species, c.dim);
  const double eps = c.params.epsilon;
  const double m1 = c.species.species[0].mass;
  const double m2 = c.species.species[1].mass;
  const double l1 = c.species.species[0].internal_dof;
  const double l2 = c.species.species[1].internal_dof;
  ClosureResiduals r;
  for (std::size_t i = 0; i < static_cast<std::size_t>(c.dim); ++i) {
    const double scale = eps * m1 * std::abs(c.m1.u[i]) + m2 * std::abs(c.m2.u[i]) + 1.0;
    const double sum = eps * m1 * (x.u12[i] - c.m1.u[i]) + m2 * (x.u21[i] - c.m2.u[i]);
    r.momentum = std::max(r.momentum, std::abs(sum) / scale);
  }
  const double e1 = 0.5 * m1 * (x.u12.norm_squared() - c.m1.u.norm_squared()) + 0.5 * c.dim * (x.Lambda12 - c.m1.Lambda) +
                    0.5 * m1 * (x.eta12.norm_squared() - c.m1.eta_bar.norm_squared()) +
                    0.5 * l1 * (x.Theta12 - c.m1.Theta);
  const double e2 = 0.5 * m2 * (x.u21.norm_squared() - c.m2.u.norm_squared()) + 0.5 * c.dim * (x.Lambda21 - c.m2.Lambda) +
                    0.5 * m2 * (x.eta21.norm_squared() - c.m2.eta_bar.norm_squared()) +
                    0.5 * l2 * (x.Theta21 - c.m2.Theta);
  const double scale = eps * (0.5 * m1 * (c.m1.u.norm_squared() + c.m1.eta_bar.norm_squared()) +
                              0.5 * c.dim * c.m1.Lambda + 0.5 * l1 * c.m1.Theta) +
                       0.5 * m2 * (c.m2.u.norm_squared() + c.m2.eta_bar.norm_squared()) + 0.5 * c.dim * c.m2.Lambda +
                       0.5 * l2 * c.m2.Theta;
  r.energy = std::abs(eps * e1 + e2) / scale;
  r.positive = x.Lambda12 > 0.0 && x.Theta12 > 0.0 && x.Lambda21 > 0.0 && x.Theta21 > 0.0 && x.T12 > 0.0 &&
               x.T21 > 0.0;
  return r;
}

}  // namespace bgkmix::verification
