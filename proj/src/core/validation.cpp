#include "bgkmix/core/validation.hpp"

#include <limits>
#include <sstream>

namespace bgkmix {
namespace {

ConstraintCheck interval_check(std::string name, std::string description, double value, double lower, double upper,
                               bool lower_open = false) {
  ConstraintCheck c;
  c.name = std::move(name);
  c.description = std::move(description);
  c.value = value;
  c.lower = lower;
  c.upper = upper;
  c.lower_open = lower_open;
  const bool above = lower_open ? value > lower : value >= lower;
  c.passed = above && value <= upper;
  return c;
}

double mass_ratio_eps(const MixtureCouplingParams& p, const SpeciesParams& s) noexcept {
  return p.epsilon * s.species[0].mass / s.species[1].mass;
}

}  // namespace

bool ValidationReport::passed() const noexcept {
  for (const auto& c : constraints)
    if (!c.passed) return false;
  return true;
}

std::string ValidationReport::failures() const {
  std::ostringstream os;
  for (const auto& c : constraints) {
    if (c.passed) continue;
    os << c.name << ": value " << c.value << " not in " << (c.lower_open ? "(" : "[") << c.lower << ", " << c.upper
       << "] (" << c.description << ")\n";
  }
  return os.str();
}

const ConstraintCheck* ValidationReport::find(const std::string& name) const noexcept {
  for (const auto& c : constraints)
    if (c.name == name) return &c;
  return nullptr;
}

double mixing_weight_lower_bound(const MixtureCouplingParams& params, const SpeciesParams& species) noexcept {
  const double r = mass_ratio_eps(params, species);
  return (r - 1.0) / (1.0 + r);
}

double gamma_upper_bound(const MixtureCouplingParams& params, const SpeciesParams& species, int dim) noexcept {
  const double r = mass_ratio_eps(params, species);
  const double d = params.delta;
  return species.species[0].mass / dim * (1.0 - d) * ((1.0 + r) * d + 1.0 - r);
}

double gamma_tilde_upper_bound(const MixtureCouplingParams& params, const SpeciesParams& species) noexcept {
  const double r = mass_ratio_eps(params, species);
  const double b = params.beta;
  return species.species[0].mass / species.species[0].internal_dof * (1.0 - b) * ((1.0 + r) * b + 1.0 - r);
}

ValidationReport validate_coupling(const MixtureCouplingParams& params, const SpeciesParams& species, int dim) {
  ValidationReport report;
  const double l1 = species.species[0].internal_dof;
  const double l2 = species.species[1].internal_dof;
  const double inf = std::numeric_limits<double>::infinity();

  report.constraints.push_back(interval_check("epsilon", "0 < l1/(l1+l2) * epsilon <= 1",
                                              l1 / (l1 + l2) * params.epsilon, 0.0, 1.0, /*lower_open=*/true));

  const double lo = mixing_weight_lower_bound(params, species);
  report.constraints.push_back(
      interval_check("delta", "(eps m1/m2 - 1)/(1 + eps m1/m2) <= delta <= 1", params.delta, lo, 1.0));
  report.constraints.push_back(
      interval_check("beta", "(eps m1/m2 - 1)/(1 + eps m1/m2) <= beta <= 1", params.beta, lo, 1.0));

  // When delta (beta) is itself inadmissible the bracket can turn negative; the
  // interval is then empty and gamma fails unless it is exactly zero.
  const double gmax = gamma_upper_bound(params, species, dim);
  report.constraints.push_back(interval_check(
      "gamma", "0 <= gamma <= (m1/d)(1-delta)[(1 + eps m1/m2) delta + 1 - eps m1/m2]", params.gamma, 0.0, gmax));
  const double gtmax = gamma_tilde_upper_bound(params, species);
  report.constraints.push_back(interval_check("gamma_tilde",
                                              "0 <= gamma_tilde <= (m1/l1)(1-beta)[(1 + eps m1/m2) beta + 1 - eps m1/m2]",
                                              params.gamma_tilde, 0.0, gtmax));

  report.constraints.push_back(interval_check("alpha", "0 <= alpha <= 1", params.alpha, 0.0, 1.0));
  report.constraints.push_back(interval_check("alpha_epsilon",
                                              "epsilon (1 - alpha) <= 1 keeps Lambda_21 positive",
                                              params.epsilon * (1.0 - params.alpha), -inf, 1.0));
  return report;
}

}  // namespace bgkmix
