#include "bgkmix/core/params.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/small_vector.hpp"

namespace bgkmix {

std::string_view to_string(ModelVariant model) noexcept { return model == ModelVariant::a ? "a" : "b"; }

std::ostream& operator<<(std::ostream& os, ModelVariant model) { return os << to_string(model); }

ModelVariant parse_model_variant(std::string_view text) {
  if (text == "a") return ModelVariant::a;
  if (text == "b") return ModelVariant::b;
  throw ConfigError("model must be 'a' or 'b', got '" + std::string(text) + "'");
}

std::vector<int> Species::active_components() const {
  if (!internal_components.empty()) return internal_components;
  std::vector<int> out(static_cast<std::size_t>(internal_dof));
  for (int i = 0; i < internal_dof; ++i) out[static_cast<std::size_t>(i)] = i;
  return out;
}

void SpeciesParams::validate() const {
  if (internal_space_dim < 1 || internal_space_dim > static_cast<int>(kMaxInternalDof))
    throw ConfigError("internal_space_dim must be in [1, " + std::to_string(kMaxInternalDof) + "]");
  for (int k = 0; k < 2; ++k) {
    const Species& s = species[static_cast<std::size_t>(k)];
    const std::string tag = "species " + std::to_string(k + 1) + ": ";
    if (!(s.mass > 0.0)) throw ConfigError(tag + "mass must be positive");
    if (s.internal_dof < 1 || s.internal_dof > internal_space_dim)
      throw ConfigError(tag + "l must be in [1, internal_space_dim]");
    if (!(s.collision_number > 0.0)) throw ConfigError(tag + "Z_r must be positive");
    const auto comps = s.active_components();
    if (static_cast<int>(comps.size()) != s.internal_dof)
      throw ConfigError(tag + "number of internal components must equal l");
    std::set<int> seen;
    for (int c : comps) {
      if (c < 0 || c >= internal_space_dim) throw ConfigError(tag + "internal component index out of range");
      if (!seen.insert(c).second) throw ConfigError(tag + "duplicate internal component index");
    }
  }
  if (nu_tilde_11 < 0.0 || nu_tilde_22 < 0.0 || nu_tilde_21 < 0.0)
    throw ConfigError("collision coefficients nu_tilde must be non-negative");
}

CollisionMatrix collision_matrix(const SpeciesParams& species, const MixtureCouplingParams& coupling) noexcept {
  CollisionMatrix nu{};
  nu[0][0] = species.nu_tilde_11;
  nu[1][1] = species.nu_tilde_22;
  nu[1][0] = species.nu_tilde_21;
  nu[0][1] = coupling.epsilon * species.nu_tilde_21;
  return nu;
}

}  // namespace bgkmix
