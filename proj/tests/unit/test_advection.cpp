#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/solver/advection.hpp"
#include "test_support.hpp"

namespace bgkmix {
namespace {

// Velocity nodes +-0.5, +-1.5, ... (unit spacing) and 16 x-nodes on [0, 1).
PhaseSpaceGrid unit_velocity_grid(int nx, int nv = 8, int dim = 1) {
  GridConfig g = testing::small_grid(dim, nx, nv, 4);
  for (auto& s : g.species) {
    s.velocity_max = nv / 2.0;
    s.internal_max = 40.0;
  }
  g.mass_loss_tolerance = 1.0;
  return build_grid(g, testing::single_dof_pair(1, 1));
}

DistributionField random_field(const PhaseSpaceGrid& grid, int k, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  DistributionField f = DistributionField::for_species(grid, k);
  for (double& v : f.values()) v = u(rng);
  return f;
}

double total(const DistributionField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s;
}

TEST(LagrangeWeights, SumToOneAndReproducePolynomials) {
  for (int stencil : {2, 4, 6, 8}) {
    const double theta = 0.3137;
    const auto w = lagrange_weights(theta, stencil);
    double s = 0.0;
    for (double v : w) s += v;
    EXPECT_NEAR(s, 1.0, 1e-14);
    for (int p = 1; p < stencil; ++p) {
      double value = 0.0;
      for (int j = 0; j < stencil; ++j) value += w[static_cast<std::size_t>(j)] * std::pow(j - stencil / 2, p);
      EXPECT_NEAR(value, std::pow(-theta, p), 1e-11) << "stencil " << stencil << " degree " << p;
    }
  }
}

TEST(Advection, NodeAlignedShiftIsBitExact) {
  const PhaseSpaceGrid grid = unit_velocity_grid(16);
  const DistributionField f = random_field(grid, 0, 1);
  const double dt = 2.0 * grid.space.spacing[0];  // v dt / dx = 2 v: odd integers
  const DistributionField g = advected(f, grid[0], grid.space, dt);
  for (std::size_t ix = 0; ix < 16; ++ix)
    for (std::size_t iv = 0; iv < grid[0].velocity_size; ++iv) {
      const long long shift = std::llround(2.0 * grid[0].velocity(iv, 0));
      const std::size_t src = static_cast<std::size_t>(((static_cast<long long>(ix) - shift) % 16 + 16) % 16);
      for (std::size_t ie = 0; ie < grid[0].internal_size; ++ie) EXPECT_EQ(g(ix, iv, ie), f(src, iv, ie));
    }
}

TEST(Advection, ZeroStepIsIdentity) {
  const PhaseSpaceGrid grid = unit_velocity_grid(16);
  const DistributionField f = random_field(grid, 1, 2);
  EXPECT_EQ(advected(f, grid[1], grid.space, 0.0), f);
}

TEST(Advection, ConservesMassForArbitrarySteps) {
  for (int dim : {1, 2}) {
    const PhaseSpaceGrid grid = unit_velocity_grid(12, 6, dim);
    DistributionField f = random_field(grid, 0, 3);
    const double before = total(f);
    for (double dt : {0.0371, 0.2, 1.37}) {
      advect(f, grid[0], grid.space, dt);
      EXPECT_NEAR(total(f), before, 1e-12 * before);
    }
  }
}

TEST(Advection, NegativeStepIsRejected) {
  const PhaseSpaceGrid grid = unit_velocity_grid(8);
  DistributionField f = random_field(grid, 0, 4);
  EXPECT_THROW(advect(f, grid[0], grid.space, -0.1), ConfigError);
  AdvectionOptions bad;
  bad.stencil = 5;
  EXPECT_THROW(advect(f, grid[0], grid.space, 0.1, bad), ConfigError);
}

double translation_error(int nx, int stencil) {
  const PhaseSpaceGrid grid = unit_velocity_grid(nx, 4);
  DistributionField f = DistributionField::for_species(grid, 0);
  auto profile = [](double x) { return 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * x); };
  for (std::size_t ix = 0; ix < f.space_size(); ++ix)
    for (std::size_t iv = 0; iv < f.velocity_size(); ++iv)
      for (std::size_t ie = 0; ie < f.internal_size(); ++ie) f(ix, iv, ie) = profile(grid.space.coordinate(ix, 0));
  AdvectionOptions opt;
  opt.stencil = stencil;
  const double dt = 0.0437;
  const int steps = 23;
  for (int s = 0; s < steps; ++s) advect(f, grid[0], grid.space, dt, opt);
  double err = 0.0;
  for (std::size_t ix = 0; ix < f.space_size(); ++ix)
    for (std::size_t iv = 0; iv < f.velocity_size(); ++iv) {
      const double exact = profile(grid.space.coordinate(ix, 0) - grid[0].velocity(iv, 0) * dt * steps);
      err += std::abs(f(ix, iv, 0) - exact) * grid.space.spacing[0];
    }
  return err;
}

TEST(Advection, ConvergesAtInterpolationOrder) {
  for (int stencil : {4, 6}) {
    const double coarse = translation_error(16, stencil);
    const double fine = translation_error(32, stencil);
    const double order = std::log2(coarse / fine);
    // Per-step error O(dx^p) accumulated over a fixed number of steps.
    EXPECT_GT(order, stencil - 0.5) << "stencil " << stencil;
  }
}

TEST(Advection, LimiterKeepsDiscontinuousDataNonnegative) {
  const PhaseSpaceGrid grid = unit_velocity_grid(32);
  DistributionField f = DistributionField::for_species(grid, 0);
  for (std::size_t ix = 8; ix < 16; ++ix)
    for (std::size_t iv = 0; iv < f.velocity_size(); ++iv)
      for (std::size_t ie = 0; ie < f.internal_size(); ++ie) f(ix, iv, ie) = 1.0;
  const double before = total(f);
  for (int s = 0; s < 40; ++s) advect(f, grid[0], grid.space, 0.0123);
  double lo = 0.0;
  for (double v : f.values()) lo = std::min(lo, v);
  EXPECT_GE(lo, 0.0);
  EXPECT_NEAR(total(f), before, 1e-12 * before);

  // Without the limiter the same data undershoots.
  DistributionField g = DistributionField::for_species(grid, 0);
  for (std::size_t ix = 8; ix < 16; ++ix)
    for (std::size_t iv = 0; iv < g.velocity_size(); ++iv)
      for (std::size_t ie = 0; ie < g.internal_size(); ++ie) g(ix, iv, ie) = 1.0;
  AdvectionOptions signed_data;
  signed_data.limit_positivity = false;
  advect(g, grid[0], grid.space, 0.0123, signed_data);
  double glo = 0.0;
  for (double v : g.values()) glo = std::min(glo, v);
  EXPECT_LT(glo, 0.0);
}

TEST(Advection, ColumnsMatchFieldTransport) {
  const PhaseSpaceGrid grid = unit_velocity_grid(16);
  const DistributionField f = random_field(grid, 0, 9);
  std::vector<double> cols(f.values());
  advect_columns(cols, f.internal_size(), grid[0], grid.space, 0.071);
  EXPECT_EQ(cols, advected(f, grid[0], grid.space, 0.071).values());
}

TEST(Advection, ThreadCountDoesNotChangeResult) {
  const PhaseSpaceGrid grid = unit_velocity_grid(16, 8, 2);
  const DistributionField f = random_field(grid, 1, 11);
  EXPECT_EQ(advected(f, grid[1], grid.space, 0.0913, {}, 1), advected(f, grid[1], grid.space, 0.0913, {}, 3));
}

}  // namespace
}  // namespace bgkmix
