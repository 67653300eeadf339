#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bgkmix {

/// Which evolution equation drives the internal temperature Theta_k.
///  a: relaxation equation carrying nu_kk n_k (M_k - f_k) + nu_kj n_j (M_kj - f_k)
///  b: relaxation of M_k towards the single-temperature M~_k and M~_kj
enum class ModelVariant { a, b };

std::string_view to_string(ModelVariant model) noexcept;
ModelVariant parse_model_variant(std::string_view text);
std::ostream& operator<<(std::ostream& os, ModelVariant model);

/// Physical constants of one species.
struct Species {
  double mass = 1.0;
  /// l_k, number of internal degrees of freedom.
  int internal_dof = 2;
  /// Z_r^k, rotational/vibrational collision number.
  double collision_number = 1.0;
  /// Indices into the shared internal space R^M on which this species is active.
  /// Empty means the first internal_dof components.
  std::vector<int> internal_components;

  /// z_k = Z_r^k d / (d + l_k).
  double reduced_collision_number(int dim) const noexcept {
    return collision_number * dim / (dim + internal_dof);
  }
  std::vector<int> active_components() const;
};

/// Species constants plus the constant collision-frequency coefficients
/// nu~_jk of the density-ratio form nu_jk n_k = nu~_jk n_k / (n_1 + n_2).
/// nu~_12 is never stored: it is derived as epsilon * nu~_21.
struct SpeciesParams {
  std::array<Species, 2> species;
  /// M, the number of distinct internal degrees of freedom across species.
  int internal_space_dim = 3;
  double nu_tilde_11 = 1.0;
  double nu_tilde_22 = 1.0;
  double nu_tilde_21 = 1.0;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// Free exchange parameters of the interspecies Maxwellians.
struct MixtureCouplingParams {
  double delta = 0.5;
  double beta = 0.5;
  double alpha = 0.5;
  double gamma = 0.0;
  double gamma_tilde = 0.0;
  double epsilon = 1.0;
};

/// nu~ matrix with nu~_12 = epsilon nu~_21 applied; indices are 0-based species.
using CollisionMatrix = std::array<std::array<double, 2>, 2>;
CollisionMatrix collision_matrix(const SpeciesParams& species, const MixtureCouplingParams& coupling) noexcept;

/// Everything the solver needs to know about the physics.
struct PhysicalModel {
  int dim = 1;
  ModelVariant variant = ModelVariant::a;
  SpeciesParams species;
  MixtureCouplingParams coupling;

  const Species& operator[](int k) const noexcept { return species.species[static_cast<std::size_t>(k)]; }
  CollisionMatrix nu_tilde() const noexcept { return collision_matrix(species, coupling); }
};

}  // namespace bgkmix
