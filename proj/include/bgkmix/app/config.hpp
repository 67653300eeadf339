#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bgkmix/core/grid.hpp"
#include "bgkmix/core/params.hpp"
#include "bgkmix/solver/initial.hpp"
#include "bgkmix/solver/picard.hpp"
#include "bgkmix/solver/stepper.hpp"

namespace bgkmix::app {

/// Time integrator of a run.
///  splitting: Strang steps of length time.dt up to time.t_final.
///  picard:    the iteration of mild solutions on [0, time.t_final].
enum class Integrator { splitting, picard };

std::string_view to_string(Integrator integrator) noexcept;
Integrator parse_integrator(std::string_view text);

struct TimeConfig {
  double dt = 0.05;
  double t_final = 5.0;
  /// CSV rows every this many steps (the initial and final states are always written).
  int output_every = 10;
  /// Checkpoint every this many steps; 0 writes only the final checkpoint.
  int checkpoint_every = 0;
};

/// Thresholds and scenario sizes of the acceptance suite run by `verify`.
struct AcceptanceConfig {
  // 1. Maxwellian round-trip
  int maxwellian_draws = 200;
  double maxwellian_mass_tol = 1e-12;
  double maxwellian_moment_tol = 1e-8;
  // 2. exchange closure
  int closure_draws = 1000;
  double closure_tol = 1e-12;
  // 3-5. conservation, positivity, lower bounds on the configured scenario
  int conservation_steps = 100;
  double conservation_dt = 0.05;
  double mass_tol = 1e-12;
  double momentum_tol = 1e-6;
  double energy_tol = 1e-6;
  double refinement_order = 2.0;
  std::vector<int> refinement_velocity_nodes{24, 32, 40};
  int refinement_steps = 20;
  // 6. space-homogeneous equilibration
  double ode_tol = 1e-6;
  double ode_t_final = 5.0;
  double ode_dt = 0.05;
  double limit_tol = 1e-8;
  double limit_time_factor = 50.0;
  double limit_dt = 0.5;
  // 7. equation of state
  double eos_tol = 1e-8;
  std::vector<double> eos_p_inf{0.0, 0.5, 2.0};
  // 8. Picard mode
  double picard_fixed_point_tol = 1e-10;
  double picard_match_tol = 1e-4;
  double picard_t_final = 0.2;
  int picard_x_nodes = 16;
  double picard_reference_dt = 0.005;
  // 9. reproducibility
  std::vector<int> reproducibility_threads{1, 4, 8};
  int reproducibility_steps = 4;
};

/// Everything a run or a verification needs; parsed from YAML.
struct RunConfig {
  std::string name = "run";
  std::uint64_t seed = 1;
  PhysicalModel model;
  Integrator integrator = Integrator::splitting;
  GridConfig grid;
  InitialCondition initial;
  TimeConfig time;
  SolverOptions solver;
  PicardOptions picard;
  int threads = 1;
  AcceptanceConfig acceptance;
  /// The YAML text the config was parsed from (stored in checkpoints).
  std::string source;
};

/// Parses and validates a config. Throws ConfigError naming the offending key
/// or the violated admissibility constraint.
RunConfig parse_config(const std::string& yaml_text, const std::string& origin = "<config>");

/// Reads `path` and parses it; a missing or unreadable file is a ConfigError.
RunConfig load_config(const std::filesystem::path& path);

/// Cross-field checks (species, coupling region, grid, time stepping).
void validate_config(const RunConfig& config);

}  // namespace bgkmix::app
