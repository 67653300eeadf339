#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/mixture.hpp"
#include "bgkmix/core/validation.hpp"
#include "test_support.hpp"

namespace bgkmix {
namespace {

MomentSet make_moments(double n, VelocityVector u, InternalVector eta, double Lambda, double Theta) {
  MomentSet m;
  m.n = n;
  m.u = u;
  m.eta_bar = eta;
  m.Lambda = Lambda;
  m.Theta = Theta;
  return m;
}

TEST(ExchangeVelocities, DeltaOneKeepsOwnVelocities) {
  const SpeciesParams s = testing::diatomic_pair(1.0, 2.0);
  MixtureCouplingParams p;
  p.delta = 1.0;
  const auto [u12, u21] = exchange_velocities(VelocityVector{0.3}, VelocityVector{-0.7}, p, s);
  EXPECT_DOUBLE_EQ(u12[0], 0.3);
  EXPECT_DOUBLE_EQ(u21[0], -0.7);
}

TEST(ExchangeVelocities, CommonVelocityIsFixed) {
  const SpeciesParams s = testing::diatomic_pair(1.0, 3.0);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto p = testing::random_admissible(rng, s, 2);
    const VelocityVector u{0.25, -1.5};
    const auto [u12, u21] = exchange_velocities(u, u, p, s);
    for (std::size_t a = 0; a < 2; ++a) {
      EXPECT_NEAR(u12[a], u[a], 1e-15);
      EXPECT_NEAR(u21[a], u[a], 1e-15);
    }
  }
}

TEST(ExchangeVelocities, SubstitutionExample) {
  const SpeciesParams s = testing::diatomic_pair(1.0, 2.0);
  MixtureCouplingParams p;
  p.epsilon = 1.0;
  p.delta = 0.0;
  const auto [u12, u21] = exchange_velocities(VelocityVector{0.0}, VelocityVector{1.0}, p, s);
  EXPECT_DOUBLE_EQ(u12[0], 1.0);
  EXPECT_DOUBLE_EQ(u21[0], 0.5);
}

TEST(ExchangeEta, BetaOneKeepsOwnMean) {
  const SpeciesParams s = testing::diatomic_pair();
  MixtureCouplingParams p;
  p.beta = 1.0;
  const auto [e12, e21] = exchange_eta(InternalVector{0.4, -0.2}, InternalVector{1.0, 2.0, 3.0}, p, s);
  EXPECT_DOUBLE_EQ(e12[0], 0.4);
  EXPECT_DOUBLE_EQ(e12[1], -0.2);
  EXPECT_DOUBLE_EQ(e21[2], 3.0);
}

TEST(ExchangeEta, ZeroMeansStayZero) {
  const SpeciesParams s = testing::diatomic_pair();
  MixtureCouplingParams p;
  p.beta = 0.3;
  const auto [e12, e21] = exchange_eta(InternalVector{0.0, 0.0}, InternalVector{0.0, 0.0, 0.0}, p, s);
  EXPECT_EQ(e12.norm(), 0.0);
  EXPECT_EQ(e21.norm(), 0.0);
}

TEST(ExchangeEta, MaskingExample) {
  const SpeciesParams s = testing::diatomic_pair();
  MixtureCouplingParams p;
  p.beta = 0.5;
  // eta_1 = (1, 1, 0) on components {1, 2}; eta_2 = (0, 2, 2).
  const auto [e12, e21] = exchange_eta(InternalVector{1.0, 1.0}, InternalVector{0.0, 2.0, 2.0}, p, s);
  ASSERT_EQ(e12.size(), 2u);
  EXPECT_DOUBLE_EQ(e12[0], 0.5);
  EXPECT_DOUBLE_EQ(e12[1], 1.5);
}

TEST(ExchangeEta, RespectsExplicitComponents) {
  SpeciesParams s = testing::single_dof_pair(1, 2);
  s.species[0].internal_components = {2};
  s.species[1].internal_components = {0, 2};
  MixtureCouplingParams p;
  p.beta = 0.25;
  p.epsilon = 1.0;
  const auto [e12, e21] = exchange_eta(InternalVector{4.0}, InternalVector{1.0, 2.0}, p, s);
  // Full vectors: eta_1 = (0, 0, 4), eta_2 = (1, 0, 2).
  EXPECT_DOUBLE_EQ(e12[0], 0.25 * 4.0 + 0.75 * 2.0);
  EXPECT_DOUBLE_EQ(e21[0], 1.0 - 0.75 * (1.0 - 0.0));
  EXPECT_DOUBLE_EQ(e21[1], 2.0 - 0.75 * (2.0 - 4.0));
}

TEST(ExchangeTemperatures, NoDifferencesGiveConvexMixtures) {
  const SpeciesParams s = testing::diatomic_pair(1.0, 2.0);
  MixtureCouplingParams p;
  p.alpha = 1.0;
  p.gamma = 0.0;
  p.gamma_tilde = 0.0;
  p.epsilon = 1.0;
  const MomentSet m1 = make_moments(1.0, VelocityVector{0.2}, InternalVector{0.0, 0.0}, 0.9, 1.1);
  const MomentSet m2 = make_moments(0.5, VelocityVector{0.2}, InternalVector{0.0, 0.0, 0.0}, 1.4, 0.6);
  const ExchangeSet x = exchange_temperatures(m1, m2, p, s, 1);
  EXPECT_DOUBLE_EQ(x.Lambda12, 0.9);
  EXPECT_NEAR(x.Theta12, (2 * 1.1 + 3 * 0.6) / 5.0, 1e-15);
  EXPECT_DOUBLE_EQ(x.Lambda21, 1.4);
  EXPECT_DOUBLE_EQ(x.n12, 1.0);
  EXPECT_DOUBLE_EQ(x.n21, 0.5);
}

TEST(ExchangeTemperatures, EquilibriumIsFixedPoint) {
  const SpeciesParams s = testing::diatomic_pair(1.0, 2.0);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto p = testing::random_admissible(rng, s, 1);
    const MomentSet m1 = make_moments(1.0, VelocityVector{0.2}, InternalVector{0.0, 0.0}, 0.8, 0.8);
    const MomentSet m2 = make_moments(2.0, VelocityVector{0.2}, InternalVector{0.0, 0.0, 0.0}, 0.8, 0.8);
    const ExchangeSet x = exchange_temperatures(m1, m2, p, s, 1);
    for (double t : {x.Lambda12, x.Lambda21, x.Theta12, x.Theta21, x.T12, x.T21}) EXPECT_NEAR(t, 0.8, 1e-14);
    EXPECT_NEAR(x.u12[0], 0.2, 1e-15);
    EXPECT_NEAR(x.u21[0], 0.2, 1e-15);
  }
}

TEST(ExchangeTemperatures, VanishingBracketExample) {
  const SpeciesParams s = testing::diatomic_pair(1.0, 1.0);
  MixtureCouplingParams p;
  p.epsilon = 1.0;
  p.delta = 0.0;
  p.gamma = 0.0;
  p.alpha = 0.5;
  // Oracle: (1/d) eps m1 (1-delta)((m1/m2) eps (delta-1) + delta + 1) - eps gamma
  const double bracket = (1.0 / 3.0) * 1.0 * 1.0 * (1.0 * (0.0 - 1.0) + 0.0 + 1.0) - 0.0;
  EXPECT_EQ(bracket, 0.0);
  const MomentSet m1 = make_moments(1.0, VelocityVector{1.0, 0.0, 0.0}, InternalVector{0.0, 0.0}, 1.2, 1.0);
  const MomentSet m2 = make_moments(1.0, VelocityVector{0.0, 0.0, 0.0}, InternalVector{0.0, 0.0, 0.0}, 0.6, 1.0);
  const ExchangeSet x = exchange_temperatures(m1, m2, p, s, 3);
  EXPECT_NEAR(x.Lambda21, 0.5 * 1.2 + 0.5 * 0.6, 1e-15);
  EXPECT_NEAR(x.T21, (3 * x.Lambda21 + 3 * x.Theta21) / 6.0, 1e-15);
}

TEST(ExchangeTemperatures, InadmissibleInputsThrow) {
  const SpeciesParams s = testing::diatomic_pair(1.0, 1.0);
  MixtureCouplingParams p;
  p.delta = 1.0;
  p.gamma = 10.0;  // violates the gamma bound
  const MomentSet m1 = make_moments(1.0, VelocityVector{3.0}, InternalVector{0.0, 0.0}, 0.1, 1.0);
  const MomentSet m2 = make_moments(1.0, VelocityVector{0.0}, InternalVector{0.0, 0.0, 0.0}, 0.1, 1.0);
  EXPECT_THROW(exchange_temperatures(m1, m2, p, s, 1), NegativeTemperatureError);
}

struct RandomCase {
  SpeciesParams species;
  MixtureCouplingParams params;
  MomentSet m1, m2;
  int dim;
};

RandomCase random_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> dof(1, 3);
  std::uniform_int_distribution<int> dims(1, 3);
  RandomCase c;
  c.dim = dims(rng);
  c.species = testing::single_dof_pair(dof(rng), dof(rng), 0.2 + 5.0 * unit(rng), 0.2 + 5.0 * unit(rng));
  for (auto& sp : c.species.species) {
    std::vector<int> comps{0, 1, 2};
    std::shuffle(comps.begin(), comps.end(), rng);
    comps.resize(static_cast<std::size_t>(sp.internal_dof));
    std::sort(comps.begin(), comps.end());
    sp.internal_components = comps;
  }
  c.params = testing::random_admissible(rng, c.species, c.dim);
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

TEST(ExchangeClosure, MomentumAndEnergyIdentitiesHold) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const RandomCase c = random_case(rng);
    const ExchangeSet x = exchange_temperatures(c.m1, c.m2, c.params, c.species, c.dim);
    const double eps = c.params.epsilon;
    const double m1 = c.species.species[0].mass;
    const double m2 = c.species.species[1].mass;
    const double l1 = c.species.species[0].internal_dof;
    const double l2 = c.species.species[1].internal_dof;
    for (int a = 0; a < c.dim; ++a) {
      const auto i = static_cast<std::size_t>(a);
      const double scale = eps * m1 * std::abs(c.m1.u[i]) + m2 * std::abs(c.m2.u[i]) + 1.0;
      const double sum = eps * m1 * (x.u12[i] - c.m1.u[i]) + m2 * (x.u21[i] - c.m2.u[i]);
      EXPECT_LE(std::abs(sum) / scale, 1e-12);
    }
    const double e1 = 0.5 * m1 * (x.u12.norm_squared() - c.m1.u.norm_squared()) +
                      0.5 * c.dim * (x.Lambda12 - c.m1.Lambda) +
                      0.5 * m1 * (x.eta12.norm_squared() - c.m1.eta_bar.norm_squared()) +
                      0.5 * l1 * (x.Theta12 - c.m1.Theta);
    const double e2 = 0.5 * m2 * (x.u21.norm_squared() - c.m2.u.norm_squared()) +
                      0.5 * c.dim * (x.Lambda21 - c.m2.Lambda) +
                      0.5 * m2 * (x.eta21.norm_squared() - c.m2.eta_bar.norm_squared()) +
                      0.5 * l2 * (x.Theta21 - c.m2.Theta);
    const double scale = eps * (0.5 * m1 * (c.m1.u.norm_squared() + c.m1.eta_bar.norm_squared()) +
                                0.5 * c.dim * c.m1.Lambda + 0.5 * l1 * c.m1.Theta) +
                         0.5 * m2 * (c.m2.u.norm_squared() + c.m2.eta_bar.norm_squared()) + 0.5 * c.dim * c.m2.Lambda +
                         0.5 * l2 * c.m2.Theta;
    EXPECT_LE(std::abs(eps * e1 + e2) / scale, 1e-12) << "trial " << trial;
  }
}

TEST(ExchangeClosure, AdmissibleParametersKeepTemperaturesPositive) {
  std::mt19937_64 rng(99);
  int failures = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const RandomCase c = random_case(rng);
    try {
      exchange_temperatures(c.m1, c.m2, c.params, c.species, c.dim);
    } catch (const NegativeTemperatureError&) {
      ++failures;
    }
  }
  EXPECT_EQ(failures, 0);
}

}  // namespace
}  // namespace bgkmix
