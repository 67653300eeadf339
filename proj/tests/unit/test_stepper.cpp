#include <gtest/gtest.h>

#include <cmath>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/moments.hpp"
#include "bgkmix/solver/initial.hpp"
#include "bgkmix/solver/stepper.hpp"
#include "test_support.hpp"

namespace bgkmix {
namespace {

PhaseSpaceGrid step_grid(int nx = 16, int ne = 24) {
  return build_grid(testing::small_grid(1, nx, 32, ne, 1.6, 0.5, 0.5), testing::single_dof_pair(1, 1, 1.0, 1.5));
}

PhysicalModel step_model(ModelVariant v) {
  SpeciesParams s = testing::single_dof_pair(1, 1, 1.0, 1.5);
  s.internal_space_dim = 2;
  s.species[1].internal_components = {1};
  s.species[0].collision_number = 2.0;
  s.species[1].collision_number = 3.0;
  s.nu_tilde_21 = 0.7;
  MixtureCouplingParams c;
  c.delta = 0.7;
  c.beta = 0.6;
  c.alpha = 0.6;
  return testing::make_model(v, s, 1, c);
}

InitialCondition smooth_ic() {
  InitialCondition ic;
  ic.species[0].n_amplitude = 0.2;
  ic.species[0].u_amplitude = 0.1;
  ic.species[0].T_amplitude = 0.1;
  ic.species[0].T_rot = 0.9;
  ic.species[1].n = 0.7;
  ic.species[1].n_amplitude = -0.1;
  ic.species[1].T_trans = 1.2;
  ic.species[1].phase = 0.4;
  return ic;
}

double field_distance(const KineticState& a, const KineticState& b) {
  double s = 0.0;
  for (int k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < a.f[static_cast<std::size_t>(k)].size(); ++i)
      s += std::abs(a.f[static_cast<std::size_t>(k)].values()[i] - b.f[static_cast<std::size_t>(k)].values()[i]);
  return s;
}

class StepperBothModels : public ::testing::TestWithParam<ModelVariant> {};

TEST_P(StepperBothModels, HomogeneousStepEqualsRelaxStep) {
  const PhaseSpaceGrid grid = step_grid(8);
  const PhysicalModel model = step_model(GetParam());
  InitialCondition ic;
  ic.species[0].T_rot = 0.7;
  ic.species[1].u = VelocityVector{0.2};
  KineticState a = make_initial_state(ic, model, grid);
  KineticState b = a;
  step(a, model, grid, 0.1);
  relax(b, model, grid, 0.1);
  double peak = 0.0;
  for (double v : b.f[0].values()) peak = std::max(peak, v);
  for (int k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < a.f[static_cast<std::size_t>(k)].size(); ++i)
      ASSERT_NEAR(a.f[static_cast<std::size_t>(k)].values()[i], b.f[static_cast<std::size_t>(k)].values()[i],
                  1e-13 * peak);
  EXPECT_DOUBLE_EQ(a.time, 0.1);
  EXPECT_EQ(a.steps, 1u);
}

TEST_P(StepperBothModels, ReportsConservationAndPositivity) {
  const PhaseSpaceGrid grid = step_grid();
  const PhysicalModel model = step_model(GetParam());
  KineticState s = make_initial_state(smooth_ic(), model, grid);
  for (int i = 0; i < 10; ++i) {
    const StepReport r = step(s, model, grid, 0.05);
    EXPECT_TRUE(r.positive);
    EXPECT_FALSE(r.vacuum);
    for (int k = 0; k < 2; ++k) {
      EXPECT_LT(std::abs(r.mass_delta[static_cast<std::size_t>(k)]), 1e-12);
      EXPECT_TRUE(std::isfinite(r.energy_delta[static_cast<std::size_t>(k)]));
    }
    const double dp = r.momentum_delta[0][0] + r.momentum_delta[1][0];
    EXPECT_LT(std::abs(dp), 1e-8);
    EXPECT_LT(std::abs(r.energy_delta[0] + r.energy_delta[1]), 1e-8);
  }
}

TEST_P(StepperBothModels, StrangSplittingIsSecondOrder) {
  const PhaseSpaceGrid grid = step_grid();
  const PhysicalModel model = step_model(GetParam());
  const KineticState start = make_initial_state(smooth_ic(), model, grid);
  // Local defect of one step against two half steps scales like dt^3.
  auto defect = [&](double dt) {
    KineticState one = start, two = start;
    step(one, model, grid, dt);
    step(two, model, grid, dt / 2);
    step(two, model, grid, dt / 2);
    return field_distance(one, two);
  };
  const double order = std::log2(defect(0.2) / defect(0.1));
  EXPECT_GT(order, 2.6);
}

TEST_P(StepperBothModels, ThreadCountDoesNotChangeResult) {
  const PhaseSpaceGrid grid = step_grid();
  const PhysicalModel model = step_model(GetParam());
  KineticState a = make_initial_state(smooth_ic(), model, grid);
  KineticState b = a;
  SolverOptions one, three;
  three.threads = 3;
  for (int i = 0; i < 3; ++i) {
    step(a, model, grid, 0.05, one);
    step(b, model, grid, 0.05, three);
  }
  EXPECT_EQ(a, b);
}

INSTANTIATE_TEST_SUITE_P(Models, StepperBothModels, ::testing::Values(ModelVariant::a, ModelVariant::b),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Stepper, UniformThetaStaysUniformUnderTransport) {
  const PhaseSpaceGrid grid = step_grid();
  const PhysicalModel model = step_model(ModelVariant::a);
  InitialCondition ic = smooth_ic();
  ic.species[0].theta = 0.9;
  ic.species[1].theta = 1.0;
  KineticState s = make_initial_state(ic, model, grid);
  advect_state(s, model, grid, 0.137);
  for (double t : s.theta[0]) EXPECT_NEAR(t, 0.9, 1e-14);
  for (double t : s.theta[1]) EXPECT_NEAR(t, 1.0, 1e-14);
}

TEST(Stepper, ThetaTransportConservesInternalContent) {
  const PhaseSpaceGrid grid = step_grid();
  const PhysicalModel model = step_model(ModelVariant::a);
  KineticState s = make_initial_state(smooth_ic(), model, grid);
  for (std::size_t ix = 0; ix < s.theta[0].size(); ++ix) s.theta[0][ix] = 0.8 + 0.1 * std::cos(0.7 * ix);
  auto content = [&](const KineticState& st) {
    const auto m = compute_moments(st.f[0], model[0], grid[0]);
    double c = 0.0;
    for (std::size_t ix = 0; ix < m.size(); ++ix) c += m[ix].n * st.theta[0][ix];
    return c;
  };
  const double before = content(s);
  advect_state(s, model, grid, 0.0731);
  // n Theta is carried by rho_k; the f marginal and rho agree up to the limiter.
  EXPECT_NEAR(content(s), before, 1e-6 * before);
}

TEST(Stepper, RejectsNonPositiveStep) {
  const PhaseSpaceGrid grid = step_grid(8);
  const PhysicalModel model = step_model(ModelVariant::a);
  KineticState s = make_initial_state(smooth_ic(), model, grid);
  EXPECT_THROW(step(s, model, grid, 0.0), ConfigError);
}

TEST(InitialState, ThetaDefaultsToRotationalTemperature) {
  const PhaseSpaceGrid grid = step_grid(8, 48);
  const PhysicalModel model = step_model(ModelVariant::a);
  InitialCondition ic;
  ic.species[0].T_rot = 0.6;
  const KineticState s = make_initial_state(ic, model, grid);
  const auto m = compute_moments(s.f[0], model[0], grid[0]);
  for (std::size_t ix = 0; ix < m.size(); ++ix) {
    EXPECT_DOUBLE_EQ(s.theta[0][ix], m[ix].T_rot);
    EXPECT_NEAR(s.theta[0][ix], 0.6, 1e-8);
  }
  EXPECT_TRUE(s.maxwellian[0].empty());
}

TEST(InitialState, ModelBMFieldCarriesTheta) {
  const PhaseSpaceGrid grid = step_grid(8);
  const PhysicalModel model = step_model(ModelVariant::b);
  InitialCondition ic;
  ic.species[1].theta = 1.3;
  const KineticState s = make_initial_state(ic, model, grid);
  const InternalMoments m = internal_moments(s.maxwellian[1].node(3), grid[1], model[1].mass);
  EXPECT_NEAR(internal_temperature(m, model[1].mass, 1), 1.3, 1e-8);
  EXPECT_NEAR(m.n, 1.0, 1e-12);
}

TEST(InitialState, RejectsInadmissibleData) {
  const PhaseSpaceGrid grid = step_grid(8);
  const PhysicalModel model = step_model(ModelVariant::a);
  InitialCondition ic;
  ic.species[0].n_amplitude = 1.5;
  EXPECT_THROW(make_initial_state(ic, model, grid), DomainError);
  ic = {};
  ic.species[0].theta = 5.0;  // Lambda = 1 + (1 - 5) < 0
  EXPECT_THROW(make_initial_state(ic, model, grid), NegativeTemperatureError);
  EXPECT_THROW(parse_initial_kind("shock"), ConfigError);
}

}  // namespace
}  // namespace bgkmix
