#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/maxwellian.hpp"
#include "bgkmix/core/moments.hpp"
#include "test_support.hpp"

namespace bgkmix {
namespace {

class MaxwellianTest : public ::testing::Test {
 protected:
  SpeciesParams species = testing::diatomic_pair(1.0, 2.0);
  PhaseSpaceGrid grid = build_grid(testing::small_grid(1, 4, 48, 40, 1.5, 0.5, 1.5), species);
  const Species& sp = species.species[0];
  MaxwellianParams unit{1.0, VelocityVector{0.0}, InternalVector{0.0, 0.0}, 1.0, 1.0};
};

TEST_F(MaxwellianTest, ZeroDensityGivesZeroField) {
  MaxwellianParams p = unit;
  p.n = 0.0;
  const DistributionField g = maxwellian(p, sp, grid[0]);
  for (double v : g.values()) EXPECT_EQ(v, 0.0);
}

TEST_F(MaxwellianTest, DiscreteMassIsExact) {
  const DistributionField g = maxwellian(unit, sp, grid[0]);
  double s = 0.0;
  for (double v : g.values()) s += v;
  EXPECT_NEAR(s * grid[0].weight(), 1.0, 1e-12);
}

TEST_F(MaxwellianTest, SecondMomentMatchesLambda) {
  const DistributionField g = maxwellian(unit, sp, grid[0]);
  double s = 0.0;
  for (std::size_t iv = 0; iv < grid[0].velocity_size; ++iv)
    for (std::size_t ie = 0; ie < grid[0].internal_size; ++ie) {
      const double v = grid[0].velocity(iv, 0);
      s += sp.mass * v * v * g(0, iv, ie);
    }
  EXPECT_NEAR(s * grid[0].weight(), 1.0, 1e-8);
}

TEST_F(MaxwellianTest, RejectsNonPositiveTemperatures) {
  MaxwellianParams p = unit;
  p.Lambda = 0.0;
  EXPECT_THROW(maxwellian(p, sp, grid[0]), DomainError);
  p = unit;
  p.Theta = -1.0;
  EXPECT_THROW(maxwellian(p, sp, grid[0]), DomainError);
}

TEST_F(MaxwellianTest, MatchesAnalyticFormulaUpToRenormalization) {
  const MaxwellianParams p{1.7, VelocityVector{0.3}, InternalVector{0.2, -0.1}, 0.8, 1.2};
  const DistributionField g = maxwellian(p, sp, grid[0]);
  const double m = sp.mass;
  // The discrete renormalization rescales by one constant close to 1.
  double ratio = 0.0;
  for (std::size_t iv = 0; iv < grid[0].velocity_size; iv += 7)
    for (std::size_t ie = 0; ie < grid[0].internal_size; ie += 5) {
      const double v = grid[0].velocity(iv, 0);
      const double e0 = grid[0].internal(ie, 0), e1 = grid[0].internal(ie, 1);
      const double analytic = p.n / std::sqrt(2 * std::numbers::pi * p.Lambda / m) /
                              (2 * std::numbers::pi * p.Theta / m) *
                              std::exp(-m * (v - 0.3) * (v - 0.3) / (2 * p.Lambda) -
                                       m * ((e0 - 0.2) * (e0 - 0.2) + (e1 + 0.1) * (e1 + 0.1)) / (2 * p.Theta));
      if (analytic < 1e-200) continue;
      const double r = g(0, iv, ie) / analytic;
      if (ratio == 0.0) ratio = r;
      EXPECT_NEAR(r, ratio, 1e-11);
    }
  EXPECT_NEAR(ratio, 1.0, 1e-10);
}

TEST_F(MaxwellianTest, EquilibriumUsesCombinedTemperature) {
  MomentSet m;
  m.n = 1.0;
  m.u = VelocityVector{0.1};
  m.eta_bar = InternalVector{0.0, 0.0};
  m.Lambda = m.Theta = m.T_equil = 0.9;
  const DistributionField a = equilibrium_maxwellian(m, sp, grid[0]);
  const DistributionField b = maxwellian({1.0, VelocityVector{0.1}, InternalVector{0.0, 0.0}, 0.9, 0.9}, sp, grid[0]);
  EXPECT_EQ(a, b);

  m.Lambda = 1.2;
  m.Theta = 0.6;
  m.T_equil = equilibrium_temperature(m.Lambda, m.Theta, 2, 1);
  const DistributionField e = equilibrium_maxwellian(m, sp, grid[0]);
  const MomentSet back = node_moments(e.node(0), grid[0], sp.mass);
  EXPECT_NEAR(back.T_trans, m.T_equil, 1e-8);
  EXPECT_NEAR(back.T_rot, m.T_equil, 1e-8);
}

TEST_F(MaxwellianTest, ExchangeMaxwelliansAtEquilibrium) {
  MomentSet m1;
  m1.n = 1.0;
  m1.u = VelocityVector{0.1};
  m1.eta_bar = InternalVector{0.0, 0.0};
  m1.Lambda = m1.Theta = 0.8;
  MomentSet m2 = m1;
  m2.n = 0.6;
  m2.eta_bar = InternalVector{0.0, 0.0, 0.0};
  MixtureCouplingParams p;
  const ExchangeSet x = exchange_temperatures(m1, m2, p, species, 1);
  const auto mixed = exchange_maxwellians(x, species, grid, ModelVariant::a);
  const DistributionField own = maxwellian(species_params(m1), sp, grid[0]);
  for (std::size_t i = 0; i < own.size(); ++i)
    EXPECT_NEAR(mixed[0].values()[i], own.values()[i], 1e-14 * own.values()[i] + 1e-300);
  double s = 0.0;
  for (double v : mixed[1].values()) s += v;
  EXPECT_NEAR(s * grid[1].weight(), 0.6, 1e-12);
}

TEST_F(MaxwellianTest, SingleTemperatureExchangeCoincides) {
  ExchangeSet x;
  x.n12 = 1.0;
  x.n21 = 1.0;
  x.u12 = x.u21 = VelocityVector{0.0};
  x.eta12 = InternalVector{0.0, 0.0};
  x.eta21 = InternalVector{0.0, 0.0, 0.0};
  x.Lambda12 = x.Theta12 = x.T12 = 0.7;
  x.Lambda21 = x.Theta21 = x.T21 = 0.9;
  const auto a = exchange_maxwellians(x, species, grid, ModelVariant::a);
  const auto b = exchange_maxwellians(x, species, grid, ModelVariant::b);
  EXPECT_EQ(a[0], b[0]);
  EXPECT_EQ(a[1], b[1]);
}

TEST_F(MaxwellianTest, FixedPointOfMomentExtraction) {
  const MaxwellianParams p{1.3, VelocityVector{0.4}, InternalVector{0.3, -0.2}, 0.7, 1.1};
  const DistributionField g = maxwellian(p, sp, grid[0]);
  MomentSet m = node_moments(g.node(0), grid[0], sp.mass);
  m.Lambda = m.T_trans;
  m.Theta = m.T_rot;
  const DistributionField h = maxwellian(species_params(m), sp, grid[0]);
  double peak = 0.0;
  for (double v : g.values()) peak = std::max(peak, v);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.values()[i] < 1e-6 * peak) continue;
    EXPECT_NEAR(h.values()[i] / g.values()[i], 1.0, 1e-8);
  }
}

TEST_F(MaxwellianTest, StrictlyPositive) {
  const DistributionField g =
      maxwellian({0.5, VelocityVector{0.5}, InternalVector{0.4, 0.4}, 1.5, 1.5}, species.species[1], grid[1]);
  for (double v : g.values()) EXPECT_GT(v, 0.0);
}

TEST_F(MaxwellianTest, FixedOffsetEquilibrium) {
  const InternalVector dir{1.0, 0.0};
  const DistributionField plain =
      fixed_offset_equilibrium(1.0, VelocityVector{0.0}, 1.0, dir, 0.0, sp, grid[0]);
  EXPECT_EQ(plain, maxwellian(unit, sp, grid[0]));

  const MaxwellianParams p = fixed_offset_params(1.0, VelocityVector{0.0}, 1.0, InternalVector{3.0, 4.0}, 0.5, sp);
  EXPECT_NEAR(p.eta_bar.norm(), 1.0, 1e-15);
  EXPECT_NEAR(p.eta_bar[0], 0.6, 1e-15);

  const MaxwellianParams q = fixed_offset_params(1.0, VelocityVector{0.0}, 1.0, dir, 0.5, sp);
  const DistributionField g = maxwellian(q, sp, grid[0]);
  const MomentSet m = node_moments(g.node(0), grid[0], sp.mass);
  EXPECT_NEAR(m.eta_bar[0], 1.0, 1e-8);
  EXPECT_NEAR(m.eta_bar[1], 0.0, 1e-12);
  EXPECT_THROW(fixed_offset_params(1.0, VelocityVector{0.0}, 1.0, dir, -0.1, sp), DomainError);
}

}  // namespace
}  // namespace bgkmix
