#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/maxwellian.hpp"
#include "bgkmix/core/moments.hpp"
#include "test_support.hpp"

namespace bgkmix {
namespace {

// Independent oracle: trapezoid quadrature of the analytic two-temperature
// Maxwellian on a grid four times finer than the solver grid (d = 1, l = 2).
struct OracleMoments {
  double n, u, T_trans, T_rot;
};
OracleMoments oracle_moments(double n, double u, double Lambda, double Theta, double m, double vmax, double emax,
                             int nodes) {
  const double hv = 2.0 * vmax / nodes;
  const double he = 2.0 * emax / nodes;
  double s0 = 0, s1 = 0, s2 = 0, r2 = 0;
  for (int i = 0; i < nodes; ++i) {
    const double v = -vmax + (i + 0.5) * hv;
    const double gv = std::exp(-m * (v - u) * (v - u) / (2 * Lambda)) / std::sqrt(2 * std::numbers::pi * Lambda / m);
    for (int j = 0; j < nodes; ++j)
      for (int k = 0; k < nodes; ++k) {
        const double e1 = -emax + (j + 0.5) * he;
        const double e2 = -emax + (k + 0.5) * he;
        const double ge = std::exp(-m * (e1 * e1 + e2 * e2) / (2 * Theta)) / (2 * std::numbers::pi * Theta / m);
        const double w = n * gv * ge * hv * he * he;
        s0 += w;
        s1 += w * v;
        s2 += w * m * (v - u) * (v - u);
        r2 += w * m * (e1 * e1 + e2 * e2);
      }
  }
  return {s0, s1 / s0, s2 / s0, r2 / (2 * s0)};
}

class Moments : public ::testing::Test {
 protected:
  SpeciesParams species = testing::diatomic_pair();
  PhaseSpaceGrid grid = build_grid(testing::small_grid(1, 4, 48, 24, 1.0, 0.5), species);
  const Species& sp = species.species[0];
};

TEST_F(Moments, RecoversMaxwellianParameters) {
  const MaxwellianParams p{2.0, VelocityVector{0.5}, InternalVector{0.0, 0.0}, 1.0, 1.0};
  const OracleMoments oracle =
      oracle_moments(2.0, 0.5, 1.0, 1.0, 1.0, grid[0].velocity_axis.half_width, grid[0].internal_axis.half_width, 96);
  EXPECT_NEAR(oracle.n, 2.0, 1e-8);
  EXPECT_NEAR(oracle.u, 0.5, 1e-8);
  EXPECT_NEAR(oracle.T_trans, 1.0, 1e-8);
  EXPECT_NEAR(oracle.T_rot, 1.0, 1e-8);

  const DistributionField g = maxwellian(p, sp, grid[0]);
  const MomentSet m = node_moments(g.node(0), grid[0], sp.mass);
  EXPECT_NEAR(m.n, 2.0, 1e-12);
  EXPECT_NEAR(m.u[0], oracle.u, 1e-8);
  EXPECT_NEAR(m.T_trans, oracle.T_trans, 1e-8);
  EXPECT_NEAR(m.T_rot, oracle.T_rot, 1e-8);
  EXPECT_NEAR(m.eta_bar[0], 0.0, 1e-12);
}

TEST_F(Moments, ZeroFieldIsVacuum) {
  const DistributionField zero = DistributionField::for_species(grid, 0);
  try {
    compute_moments(zero, sp, grid[0]);
    FAIL() << "expected VacuumError";
  } catch (const VacuumError& e) {
    EXPECT_EQ(e.node(), 0u);
    EXPECT_EQ(e.density(), 0.0);
  }
}

TEST_F(Moments, LinearInTheDistribution) {
  const DistributionField a = maxwellian({1.0, VelocityVector{0.3}, InternalVector{0.1, 0.0}, 0.8, 0.9}, sp, grid[0]);
  const DistributionField b = maxwellian({0.5, VelocityVector{-0.4}, InternalVector{0.0, -0.2}, 0.6, 0.7}, sp, grid[0]);
  DistributionField sum = a;
  sum += b;
  const MomentSet ma = node_moments(a.node(0), grid[0], sp.mass);
  const MomentSet mb = node_moments(b.node(0), grid[0], sp.mass);
  const MomentSet ms = node_moments(sum.node(0), grid[0], sp.mass);
  EXPECT_NEAR(ms.n, ma.n + mb.n, 1e-14);
  EXPECT_NEAR(ms.n * ms.u[0], ma.n * ma.u[0] + mb.n * mb.u[0], 1e-14);
  EXPECT_NEAR(ms.n * ms.eta_bar[1], ma.n * ma.eta_bar[1] + mb.n * mb.eta_bar[1], 1e-14);
}

TEST_F(Moments, HomogeneousOfDegreeOne) {
  DistributionField g = maxwellian({1.3, VelocityVector{0.2}, InternalVector{0.1, -0.1}, 0.8, 1.1}, sp, grid[0]);
  const MomentSet m0 = node_moments(g.node(0), grid[0], sp.mass);
  g *= 4.0;
  const MomentSet m1 = node_moments(g.node(0), grid[0], sp.mass);
  EXPECT_NEAR(m1.n, 4.0 * m0.n, 1e-13);
  EXPECT_NEAR(m1.P[0], 4.0 * m0.P[0], 1e-13);
  EXPECT_NEAR(m1.u[0], m0.u[0], 1e-14);
  EXPECT_NEAR(m1.T_trans, m0.T_trans, 1e-14);
  EXPECT_NEAR(m1.T_rot, m0.T_rot, 1e-14);
}

TEST_F(Moments, GridAlignedShiftMovesVelocityOnly) {
  const PhaseSpaceGrid wide = build_grid(testing::small_grid(1, 4, 64, 16, 1.0, 3.0), species);
  const SpeciesGrid& sg = wide[0];
  DistributionField g = maxwellian({1.0, VelocityVector{0.0}, InternalVector{0.0, 0.0}, 0.5, 1.0}, sp, sg);
  const MomentSet m0 = node_moments(g.node(0), sg, sp.mass);
  const std::size_t shift = 3;
  DistributionField shifted(1, sg.velocity_size, sg.internal_size);
  for (std::size_t iv = 0; iv + shift < sg.velocity_size; ++iv)
    for (std::size_t ie = 0; ie < sg.internal_size; ++ie) shifted(0, iv + shift, ie) = g(0, iv, ie);
  const MomentSet m1 = node_moments(shifted.node(0), sg, sp.mass);
  EXPECT_NEAR(m1.u[0] - m0.u[0], 3.0 * sg.velocity_axis.spacing, 1e-12);
  EXPECT_NEAR(m1.n, m0.n, 1e-12);
  EXPECT_NEAR(m1.T_trans, m0.T_trans, 1e-12);
  EXPECT_NEAR(m1.T_rot, m0.T_rot, 1e-12);
}

TEST_F(Moments, PressureTensorIsSymmetricWithTraceTemperature) {
  const PhaseSpaceGrid grid2 = build_grid(testing::small_grid(2, 4, 20, 10, 1.0, 0.5), species);
  const MaxwellianParams p{1.0, VelocityVector{0.3, -0.2}, InternalVector{0.0, 0.0}, 0.9, 1.0};
  DistributionField g = maxwellian(p, sp, grid2[0]);
  DistributionField h =
      maxwellian({0.4, VelocityVector{-0.5, 0.4}, InternalVector{0.0, 0.0}, 0.5, 1.0}, sp, grid2[0]);
  g += h;
  const MomentSet m = node_moments(g.node(0), grid2[0], sp.mass);
  EXPECT_EQ(m.pressure(0, 1, 2), m.pressure(1, 0, 2));
  EXPECT_NE(m.pressure(0, 1, 2), 0.0);
  EXPECT_NEAR((m.pressure(0, 0, 2) + m.pressure(1, 1, 2)) / (2 * m.n), m.T_trans, 1e-14);
}

TEST(LambdaFromInternal, Examples) {
  Species sp;
  sp.internal_dof = 2;
  EXPECT_DOUBLE_EQ(lambda_from_internal(0.7, 1.1, 1.1, sp, 1), 0.7);
  EXPECT_NEAR(lambda_from_internal(1.0, 1.3, 1.0, sp, 3), 1.2, 1e-15);
  EXPECT_THROW(lambda_from_internal(1.0, 1.0, 3.0, sp, 3), NegativeTemperatureError);
}

TEST(LambdaFromInternal, EquilibriumTemperatureIsWeightedMean) {
  EXPECT_DOUBLE_EQ(equilibrium_temperature(2.0, 1.0, 1, 3), 7.0 / 4.0);
  Species sp;
  sp.internal_dof = 2;
  MomentSet m;
  m.T_trans = 1.0;
  m.T_rot = 1.3;
  const MomentSet w = with_theta(m, 1.0, sp, 3);
  EXPECT_NEAR(w.T_equil, (3 * w.Lambda + 2 * w.Theta) / 5.0, 1e-15);
  EXPECT_NEAR(w.T_equil, (3 * m.T_trans + 2 * m.T_rot) / 5.0, 1e-15);
}

}  // namespace
}  // namespace bgkmix
