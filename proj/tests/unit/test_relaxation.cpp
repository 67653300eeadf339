#include <gtest/gtest.h>

#include <cmath>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/maxwellian.hpp"
#include "bgkmix/core/moments.hpp"
#include "bgkmix/solver/initial.hpp"
#include "bgkmix/solver/relaxation.hpp"
#include "bgkmix/verification/reference_ode.hpp"
#include "test_support.hpp"

namespace bgkmix {
namespace {

// l1 = l2 = 1 keeps velocity x internal grids small while exercising every term.
PhaseSpaceGrid relax_grid(int nv = 40, int ne = 48) {
  return build_grid(testing::small_grid(1, 4, nv, ne, 2.5, 1.0, 1.0), testing::single_dof_pair(1, 1, 1.0, 1.5));
}

PhysicalModel relax_model(ModelVariant v) {
  SpeciesParams s = testing::single_dof_pair(1, 1, 1.0, 1.5);
  s.internal_space_dim = 2;
  s.species[1].internal_components = {1};
  s.species[0].collision_number = 2.0;
  s.species[1].collision_number = 3.0;
  s.nu_tilde_11 = 1.0;
  s.nu_tilde_22 = 0.8;
  s.nu_tilde_21 = 0.6;
  MixtureCouplingParams c;
  c.delta = 0.7;
  c.beta = 0.6;
  c.alpha = 0.6;
  c.epsilon = 1.0;
  return testing::make_model(v, s, 1, c);
}

InitialCondition homogeneous_ic() {
  InitialCondition ic;
  ic.species[0].n = 1.0;
  ic.species[0].u = VelocityVector{0.3};
  ic.species[0].T_trans = 1.4;
  ic.species[0].T_rot = 0.8;
  ic.species[0].theta = 1.1;
  ic.species[1].n = 0.7;
  ic.species[1].u = VelocityVector{-0.2};
  ic.species[1].T_trans = 0.9;
  ic.species[1].T_rot = 1.3;
  ic.species[1].theta = 1.0;
  return ic;
}

std::array<MomentSet, 2> node_state(const KineticState& s, const PhysicalModel& model, const PhaseSpaceGrid& grid,
                                    std::size_t ix = 0) {
  std::array<MomentSet, 2> out;
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    MomentSet m = node_moments(s.f[ks].node(ix), grid[k], model[k].mass);
    double theta = 0.0;
    if (s.model == ModelVariant::a) {
      theta = s.theta[ks][ix];
    } else {
      theta = internal_temperature(internal_moments(s.maxwellian[ks].node(ix), grid[k], model[k].mass), model[k].mass,
                                   model[k].internal_dof);
    }
    out[ks] = with_theta(m, theta, model[k], model.dim);
  }
  return out;
}

KineticState equilibrium_state(const PhysicalModel& model, const PhaseSpaceGrid& grid) {
  InitialCondition ic;
  for (auto& s : ic.species) {
    s.u = VelocityVector{0.2};
    s.T_trans = s.T_rot = 1.1;
  }
  ic.species[1].n = 0.6;
  return make_initial_state(ic, model, grid);
}

class RelaxationBothModels : public ::testing::TestWithParam<ModelVariant> {};

TEST_P(RelaxationBothModels, EquilibriumIsFixedPoint) {
  const PhaseSpaceGrid grid = relax_grid();
  const PhysicalModel model = relax_model(GetParam());
  KineticState s = equilibrium_state(model, grid);
  const KineticState start = s;
  for (int i = 0; i < 5; ++i) relax(s, model, grid, 0.4);
  for (int k = 0; k < 2; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    double peak = 0.0;
    for (double v : start.f[ks].values()) peak = std::max(peak, v);
    for (std::size_t i = 0; i < s.f[ks].size(); ++i)
      EXPECT_NEAR(s.f[ks].values()[i], start.f[ks].values()[i], 1e-10 * peak);
  }
}

TEST_P(RelaxationBothModels, MassIsExactAndPositivityHoldsForLargeSteps) {
  const PhaseSpaceGrid grid = relax_grid();
  const PhysicalModel model = relax_model(GetParam());
  InitialCondition ic = homogeneous_ic();
  ic.kind = InitialKind::two_beam;
  ic.species[0].beam_speed = 1.0;
  ic.species[0].theta = 0.0;
  ic.species[1].theta = 0.0;
  KineticState s = make_initial_state(ic, model, grid);
  const double cell = grid.space.cell_volume();
  std::array<double, 2> mass{};
  for (int k = 0; k < 2; ++k)
    mass[static_cast<std::size_t>(k)] = species_totals(s.f[static_cast<std::size_t>(k)], model[k], grid[k], cell).mass;
  RelaxationOptions opt;
  opt.max_exponent = 1e9;
  for (double dt : {0.01, 1.0, 20.0}) {
    relax(s, model, grid, dt, opt);
    for (int k = 0; k < 2; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      EXPECT_NEAR(species_totals(s.f[ks], model[k], grid[k], cell).mass, mass[ks], 1e-12 * mass[ks]);
      for (double v : s.f[ks].values()) ASSERT_GE(v, 0.0);
      if (s.model == ModelVariant::b)
        for (double v : s.maxwellian[ks].values()) ASSERT_GE(v, 0.0);
    }
  }
}

TEST_P(RelaxationBothModels, StepSizeGuard) {
  const PhaseSpaceGrid grid = relax_grid();
  const PhysicalModel model = relax_model(GetParam());
  KineticState s = equilibrium_state(model, grid);
  EXPECT_THROW(relax(s, model, grid, 100.0), StepSizeError);
  RelaxationOptions loose;
  loose.max_exponent = 1e4;
  EXPECT_NO_THROW(relax(s, model, grid, 100.0, loose));
}

TEST_P(RelaxationBothModels, MatchesReferenceMomentOde) {
  const PhaseSpaceGrid grid = relax_grid();
  const PhysicalModel model = relax_model(GetParam());
  const InitialCondition ic = homogeneous_ic();
  KineticState s = make_initial_state(ic, model, grid);
  const auto start = node_state(s, model, grid);
  std::array<verification::ReferenceSpecies, 2> init;
  for (std::size_t k = 0; k < 2; ++k)
    init[k] = {start[k].n, start[k].u, start[k].eta_bar, start[k].T_trans, start[k].T_rot, start[k].Theta};
  const double dt = 0.05;
  const int steps = 40;
  std::vector<double> times;
  for (int i = 1; i <= steps; ++i) times.push_back(i * dt);
  const auto ref = verification::reference_relaxation(model, init, times);
  double worst = 0.0;
  for (int i = 0; i < steps; ++i) {
    relax(s, model, grid, dt);
    const auto now = node_state(s, model, grid);
    for (std::size_t k = 0; k < 2; ++k) {
      const MomentSet& r = ref[static_cast<std::size_t>(i)].species[k];
      worst = std::max({worst, std::abs(now[k].u[0] - r.u[0]), std::abs(now[k].Lambda - r.Lambda),
                        std::abs(now[k].Theta - r.Theta), std::abs(now[k].T_rot - r.T_rot)});
    }
  }
  EXPECT_LT(worst, 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Models, RelaxationBothModels, ::testing::Values(ModelVariant::a, ModelVariant::b),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Relaxation, IntraSpeciesOnlyConservesOwnMoments) {
  const PhaseSpaceGrid grid = relax_grid();
  PhysicalModel model = relax_model(ModelVariant::a);
  model.species.nu_tilde_21 = 0.0;
  InitialCondition ic = homogeneous_ic();
  ic.kind = InitialKind::two_beam;
  ic.species[0].beam_speed = 0.8;
  ic.species[0].theta = 0.0;
  KineticState s = make_initial_state(ic, model, grid);
  const double cell = grid.space.cell_volume();
  const SpeciesTotals before = species_totals(s.f[0], model[0], grid[0], cell);
  for (int i = 0; i < 120; ++i) relax(s, model, grid, 0.5);
  const SpeciesTotals after = species_totals(s.f[0], model[0], grid[0], cell);
  EXPECT_NEAR(after.mass, before.mass, 1e-12 * before.mass);
  EXPECT_NEAR(after.momentum[0], before.momentum[0], 1e-10);
  EXPECT_NEAR(after.energy, before.energy, 1e-10 * before.energy);
  // f_1 has reached the Maxwellian of its own moments.
  const auto m = node_state(s, model, grid);
  const DistributionField target = maxwellian(species_params(m[0]), model[0], grid[0]);
  double peak = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    peak = std::max(peak, target.values()[i]);
    diff = std::max(diff, std::abs(target.values()[i] - s.f[0].values()[i]));
  }
  EXPECT_LT(diff, 1e-8 * peak);
}

TEST(Relaxation, ModelBThetaFollowsScalarOde) {
  // Single species (no cross collisions): Theta(t) = T + (Theta0 - T) exp(-nu chi (d+l) t / (d Z_r)).
  const PhaseSpaceGrid grid = relax_grid();
  PhysicalModel model = relax_model(ModelVariant::b);
  model.species.nu_tilde_21 = 0.0;
  InitialCondition ic = homogeneous_ic();
  ic.species[0].u = VelocityVector{0.0};
  KineticState s = make_initial_state(ic, model, grid);
  const auto start = node_state(s, model, grid);
  const double T = start[0].T_equil;
  const double chi = start[0].n / (start[0].n + start[1].n);
  const double rate = model.species.nu_tilde_11 * chi * 2.0 / model[0].collision_number;
  double worst = 0.0;
  const double dt = 0.1;
  for (int i = 1; i <= 30; ++i) {
    relax(s, model, grid, dt);
    const double theta = node_state(s, model, grid)[0].Theta;
    worst = std::max(worst, std::abs(theta - (T + (start[0].Theta - T) * std::exp(-rate * i * dt))));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(Relaxation, ModelBExchangeFixedPointIsStationary) {
  const PhaseSpaceGrid grid = relax_grid();
  const PhysicalModel model = relax_model(ModelVariant::b);
  KineticState s = equilibrium_state(model, grid);
  for (int i = 0; i < 5; ++i) relax(s, model, grid, 0.3);
  const auto m = node_state(s, model, grid);
  for (const auto& mk : m) {
    EXPECT_NEAR(mk.Lambda, 1.1, 1e-10);
    EXPECT_NEAR(mk.Theta, 1.1, 1e-10);
  }
}

TEST(Relaxation, FrozenSchemeIsFirstOrder) {
  const PhaseSpaceGrid grid = relax_grid();
  const PhysicalModel model = relax_model(ModelVariant::a);
  const KineticState start = make_initial_state(homogeneous_ic(), model, grid);
  auto run = [&](RelaxationScheme scheme, int steps) {
    KineticState s = start;
    RelaxationOptions opt;
    opt.scheme = scheme;
    for (int i = 0; i < steps; ++i) relax(s, model, grid, 1.0 / steps, opt);
    return node_state(s, model, grid)[0].Lambda;
  };
  const double exact = run(RelaxationScheme::moment_ode, 64);
  const double e1 = std::abs(run(RelaxationScheme::frozen, 8) - exact);
  const double e2 = std::abs(run(RelaxationScheme::frozen, 16) - exact);
  EXPECT_NEAR(std::log2(e1 / e2), 1.0, 0.3);
  EXPECT_LT(std::abs(run(RelaxationScheme::moment_ode, 8) - exact), 1e-3 * e1);
}

TEST(Relaxation, WrongModelEntryPointThrows) {
  const PhaseSpaceGrid grid = relax_grid();
  const PhysicalModel model = relax_model(ModelVariant::a);
  KineticState s = equilibrium_state(model, grid);
  EXPECT_THROW(relax_step_model_b(s, model, grid, 0.1), ConfigError);
  EXPECT_NO_THROW(relax_step_model_a(s, model, grid, 0.1));
}

TEST(Relaxation, RatesUseMassFractions) {
  const PhysicalModel model = relax_model(ModelVariant::a);
  const RelaxationRates r = relaxation_rates(model, 1, 1.0, 3.0);
  EXPECT_DOUBLE_EQ(r.self, 0.8 * 0.75);
  EXPECT_DOUBLE_EQ(r.cross, 0.6 * 0.25);
  const RelaxationRates r1 = relaxation_rates(model, 0, 1.0, 3.0);
  EXPECT_DOUBLE_EQ(r1.cross, model.coupling.epsilon * 0.6 * 0.75);
}

}  // namespace
}  // namespace bgkmix
