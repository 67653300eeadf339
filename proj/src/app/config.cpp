#include "bgkmix/app/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/validation.hpp"

namespace bgkmix::app {
namespace {

/// A YAML mapping whose keys are consumed one by one; leftovers are typos.
class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) throw ConfigError(where() + " must be a mapping");
  }

  bool has(const std::string& key) const { return node_ && node_.IsMap() && node_[key]; }

  template <class T>
  void get(const std::string& key, T& out) {
    if (!has(key)) return;
    used_.insert(key);
    try {
      out = node_[key].as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError("key '" + qualified(key) + "' has the wrong type");
    }
  }

  template <class Vec>
  void get_vector(const std::string& key, Vec& out) {
    if (!has(key)) return;
    std::vector<double> v;
    get(key, v);
    out = Vec(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  }

  Section child(const std::string& key) {
    if (!has(key)) return Section(YAML::Node(), qualified(key));
    used_.insert(key);
    return Section(node_[key], qualified(key));
  }

  YAML::Node raw(const std::string& key) {
    used_.insert(key);
    return node_[key];
  }

  void reject(const std::string& key, const std::string& why) const {
    if (has(key)) throw ConfigError("key '" + qualified(key) + "': " + why);
  }

  void finish() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!used_.count(key)) throw ConfigError("unknown key '" + qualified(key) + "'");
    }
  }

  std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  std::string where() const { return path_.empty() ? "config root" : "'" + path_ + "'"; }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> used_;
};

/// Sequences of exactly two species entries.
std::vector<Section> species_list(Section& parent, const std::string& key) {
  std::vector<Section> out;
  if (!parent.has(key)) return out;
  const YAML::Node list = parent.raw(key);
  const std::string path = parent.qualified(key);
  if (!list.IsSequence() || list.size() != 2) throw ConfigError("'" + path + "' must list exactly two species");
  for (std::size_t i = 0; i < 2; ++i) out.emplace_back(list[i], path + "[" + std::to_string(i) + "]");
  return out;
}

/// Accepts a scalar (both species) or a two-element list.
template <class T>
void per_species(Section& s, const std::string& key, T& first, T& second) {
  if (!s.has(key)) return;
  const YAML::Node n = s.raw(key);
  try {
    if (n.IsSequence()) {
      if (n.size() != 2) throw ConfigError("key '" + s.qualified(key) + "' must be a scalar or a two-element list");
      first = n[0].as<T>();
      second = n[1].as<T>();
    } else {
      first = second = n.as<T>();
    }
  } catch (const YAML::Exception&) {
    throw ConfigError("key '" + s.qualified(key) + "' has the wrong type");
  }
}

void read_physics(Section s, RunConfig& c) {
  std::string model = std::string(to_string(c.model.variant));
  s.get("d", c.model.dim);
  SpeciesParams& sp = c.model.species;
  s.get("internal_space_dim", sp.internal_space_dim);
  s.get("nu_tilde_11", sp.nu_tilde_11);
  s.get("nu_tilde_22", sp.nu_tilde_22);
  s.get("nu_tilde_21", sp.nu_tilde_21);
  s.reject("nu_tilde_12", "derived as epsilon * nu_tilde_21; set nu_tilde_21 and coupling.epsilon instead");
  auto list = species_list(s, "species");
  for (std::size_t k = 0; k < list.size(); ++k) {
    Species& x = sp.species[k];
    list[k].get("m", x.mass);
    list[k].get("l", x.internal_dof);
    list[k].get("Z_r", x.collision_number);
    list[k].get("components", x.internal_components);
    list[k].finish();
  }
  s.finish();
}

void read_coupling(Section s, MixtureCouplingParams& p) {
  s.get("delta", p.delta);
  s.get("beta", p.beta);
  s.get("alpha", p.alpha);
  s.get("gamma", p.gamma);
  s.get("gamma_tilde", p.gamma_tilde);
  s.get("epsilon", p.epsilon);
  s.finish();
}

void read_grid(Section s, GridConfig& g) {
  s.get("box_lengths", g.box_lengths);
  s.get("x_nodes", g.x_nodes);
  per_species(s, "velocity_nodes", g.species[0].velocity_nodes, g.species[1].velocity_nodes);
  per_species(s, "velocity_max", g.species[0].velocity_max, g.species[1].velocity_max);
  per_species(s, "internal_nodes", g.species[0].internal_nodes, g.species[1].internal_nodes);
  per_species(s, "internal_max", g.species[0].internal_max, g.species[1].internal_max);
  s.get("max_temperature", g.max_temperature);
  s.get("max_speed", g.max_speed);
  s.get("max_internal_mean", g.max_internal_mean);
  s.get("mass_loss_tolerance", g.mass_loss_tolerance);
  s.get("sigma_multiple", g.sigma_multiple);
  s.finish();
}

void read_initial(Section s, InitialCondition& ic) {
  if (s.has("kind")) {
    std::string kind;
    s.get("kind", kind);
    ic.kind = parse_initial_kind(kind);
  }
  auto list = species_list(s, "species");
  for (std::size_t k = 0; k < list.size(); ++k) {
    SpeciesInitial& x = ic.species[k];
    Section& e = list[k];
    e.get("n", x.n);
    e.get_vector("u", x.u);
    e.get_vector("eta_bar", x.eta_bar);
    e.get("T_trans", x.T_trans);
    e.get("T_rot", x.T_rot);
    e.get("Theta", x.theta);
    e.get("n_amplitude", x.n_amplitude);
    e.get("u_amplitude", x.u_amplitude);
    e.get("T_amplitude", x.T_amplitude);
    e.get("mode", x.mode);
    e.get("phase", x.phase);
    e.get("beam_speed", x.beam_speed);
    e.get("beam_fraction", x.beam_fraction);
    e.get("p_inf", x.p_inf);
    e.get_vector("w_direction", x.w_direction);
    e.finish();
  }
  s.finish();
}

void read_time(Section s, TimeConfig& t) {
  s.get("dt", t.dt);
  s.get("t_final", t.t_final);
  s.get("output_every", t.output_every);
  s.get("checkpoint_every", t.checkpoint_every);
  s.finish();
}

void read_solver(Section s, SolverOptions& o) {
  s.get("advection_stencil", o.advection.stencil);
  s.get("positivity_limiter", o.advection.limit_positivity);
  if (s.has("theta_transport")) {
    std::string v;
    s.get("theta_transport", v);
    o.theta_transport = parse_theta_transport(v);
  }
  if (s.has("relaxation")) {
    std::string v;
    s.get("relaxation", v);
    o.relaxation.scheme = parse_relaxation_scheme(v);
  }
  s.get("max_exponent", o.relaxation.max_exponent);
  s.get("ode_resolution", o.relaxation.ode_resolution);
  s.get("vacuum_floor", o.relaxation.n_floor);
  s.get("vacuum_warning", o.vacuum_warning);
  s.finish();
}

void read_picard(Section s, PicardOptions& p) {
  s.get("dt", p.dt);
  s.get("iterations", p.iterations);
  s.get("burn_in", p.burn_in);
  s.get("tolerance", p.tolerance);
  s.get("q", p.q);
  if (s.has("lambda_temperatures")) {
    std::string v;
    s.get("lambda_temperatures", v);
    p.lambda_temperatures = parse_lambda_temperatures(v);
  }
  s.finish();
}

void read_acceptance(Section s, AcceptanceConfig& a) {
  s.get("maxwellian_draws", a.maxwellian_draws);
  s.get("maxwellian_mass_tol", a.maxwellian_mass_tol);
  s.get("maxwellian_moment_tol", a.maxwellian_moment_tol);
  s.get("closure_draws", a.closure_draws);
  s.get("closure_tol", a.closure_tol);
  s.get("conservation_steps", a.conservation_steps);
  s.get("conservation_dt", a.conservation_dt);
  s.get("mass_tol", a.mass_tol);
  s.get("momentum_tol", a.momentum_tol);
  s.get("energy_tol", a.energy_tol);
  s.get("refinement_order", a.refinement_order);
  s.get("refinement_velocity_nodes", a.refinement_velocity_nodes);
  s.get("refinement_steps", a.refinement_steps);
  s.get("ode_tol", a.ode_tol);
  s.get("ode_t_final", a.ode_t_final);
  s.get("ode_dt", a.ode_dt);
  s.get("limit_tol", a.limit_tol);
  s.get("limit_time_factor", a.limit_time_factor);
  s.get("limit_dt", a.limit_dt);
  s.get("eos_tol", a.eos_tol);
  s.get("eos_p_inf", a.eos_p_inf);
  s.get("picard_fixed_point_tol", a.picard_fixed_point_tol);
  s.get("picard_match_tol", a.picard_match_tol);
  s.get("picard_t_final", a.picard_t_final);
  s.get("picard_x_nodes", a.picard_x_nodes);
  s.get("picard_reference_dt", a.picard_reference_dt);
  s.get("reproducibility_threads", a.reproducibility_threads);
  s.get("reproducibility_steps", a.reproducibility_steps);
  s.finish();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

std::string_view to_string(Integrator integrator) noexcept {
  return integrator == Integrator::splitting ? "splitting" : "picard";
}

Integrator parse_integrator(std::string_view text) {
  if (text == "splitting") return Integrator::splitting;
  if (text == "picard") return Integrator::picard;
  throw ConfigError("unknown integrator '" + std::string(text) + "' (expected splitting or picard)");
}

RunConfig parse_config(const std::string& yaml_text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(origin + ": YAML syntax error: " + e.what());
  }
  RunConfig c;
  c.source = yaml_text;
  try {
    Section s(root, "");
    s.get("name", c.name);
    s.get("seed", c.seed);
    if (s.has("model")) {
      std::string v;
      s.get("model", v);
      c.model.variant = parse_model_variant(v);
    }
    if (s.has("integrator")) {
      std::string v;
      s.get("integrator", v);
      c.integrator = parse_integrator(v);
    }
    s.get("threads", c.threads);
    read_physics(s.child("physics"), c);
    read_coupling(s.child("coupling"), c.model.coupling);
    read_grid(s.child("grid"), c.grid);
    read_initial(s.child("initial"), c.initial);
    read_time(s.child("time"), c.time);
    read_solver(s.child("solver"), c.solver);
    read_picard(s.child("picard"), c.picard);
    read_acceptance(s.child("acceptance"), c.acceptance);
    s.finish();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  c.grid.dim = c.model.dim;
  c.solver.threads = c.threads;
  c.picard.threads = c.threads;
  c.picard.advection = c.solver.advection;
  try {
    validate_config(c);
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

void validate_config(const RunConfig& c) {
  require(c.model.dim >= 1 && c.model.dim <= 3, "physics.d must be 1, 2 or 3");
  c.model.species.validate();
  const ValidationReport coupling = validate_coupling(c.model.coupling, c.model.species, c.model.dim);
  if (!coupling.passed())
    throw ConfigError("coupling parameters outside the admissible region:\n" + coupling.failures());
  require(c.threads >= 1, "threads must be >= 1");
  require(c.time.dt > 0.0, "time.dt must be > 0");
  require(c.time.t_final > 0.0, "time.t_final must be > 0");
  require(c.time.output_every >= 1, "time.output_every must be >= 1");
  require(c.time.checkpoint_every >= 0, "time.checkpoint_every must be >= 0");
  check_advection_options(c.solver.advection);
  require(c.solver.relaxation.max_exponent > 0.0, "solver.max_exponent must be > 0");
  require(c.solver.relaxation.ode_resolution > 0.0, "solver.ode_resolution must be > 0");
  for (int k = 0; k < 2; ++k) {
    const SpeciesInitial& s = c.initial.species[static_cast<std::size_t>(k)];
    const std::string tag = "initial.species[" + std::to_string(k) + "]";
    require(s.n > 0.0, tag + ".n must be > 0");
    require(s.T_trans > 0.0 && s.T_rot > 0.0, tag + " temperatures must be > 0");
    require(static_cast<int>(s.u.size()) <= c.model.dim, tag + ".u has more than d components");
    require(static_cast<int>(s.eta_bar.size()) <= c.model[k].internal_dof, tag + ".eta_bar has more than l components");
  }
  const AcceptanceConfig& a = c.acceptance;
  require(a.maxwellian_draws >= 1 && a.closure_draws >= 1, "acceptance draw counts must be >= 1");
  require(a.conservation_steps >= 1 && a.conservation_dt > 0.0, "acceptance conservation run must be non-empty");
  require(a.refinement_velocity_nodes.size() >= 2, "acceptance.refinement_velocity_nodes needs >= 2 levels");
  require(a.refinement_steps >= 1, "acceptance.refinement_steps must be >= 1");
  require(a.ode_dt > 0.0 && a.ode_t_final > 0.0 && a.limit_dt > 0.0, "acceptance ODE times must be > 0");
  require(a.limit_time_factor > 0.0, "acceptance.limit_time_factor must be > 0");
  require(a.picard_t_final > 0.0 && a.picard_reference_dt > 0.0, "acceptance Picard times must be > 0");
  require(!a.reproducibility_threads.empty() && a.reproducibility_steps >= 1,
          "acceptance reproducibility run must be non-empty");
  for (int t : a.reproducibility_threads) require(t >= 1, "acceptance.reproducibility_threads must be >= 1");
}

}  // namespace bgkmix::app
