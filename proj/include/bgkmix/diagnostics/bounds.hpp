#pragma once

#include <array>
#include <utility>
#include <vector>

#include "bgkmix/core/field.hpp"
#include "bgkmix/core/grid.hpp"
#include "bgkmix/core/params.hpp"

namespace bgkmix {

struct BoundsSample {
  double time = 0.0;
  /// min_x n_k(x, t) and C0_k exp(-(nu~_kk + nu~_kj) t).
  std::array<double, 2> min_density{};
  std::array<double, 2> density_bound{};
  /// Smallest of T_k, Lambda_k, Theta_k, Lambda_kj, Theta_kj over x and k, and B(t).
  double min_temperature = 0.0;
  double temperature_bound = 0.0;
};

struct BoundsReport {
  /// C0_k = sum_v min_x rho_k^0(x, v) dv with rho_k^0 the eta-marginal of f_k^0:
  /// a lower bound of the free-transport density gamma_k(x, t) for every t.
  std::array<double, 2> C0{};
  /// nu~_kk + nu~_kj.
  std::array<double, 2> decay_rate{};
  /// B(t) = C exp(-C t) with C the smallest temperature at the first sample.
  double temperature_constant = 0.0;
  std::vector<BoundsSample> samples;
  bool density_pass = true;
  bool temperature_pass = true;
  /// Smallest min_density / density_bound - 1 and min_temperature / B - 1.
  std::array<double, 2> density_margin{};
  double temperature_margin = 0.0;
};

/// Streams states of one trajectory; the first observed state fixes t = 0,
/// C0 and the temperature constant.
class BoundsMonitor {
 public:
  BoundsMonitor(const PhysicalModel& model, const PhaseSpaceGrid& grid) : model_(model), grid_(grid) {}
  /// Continues a monitor whose first observation was at t0 (restart from a checkpoint).
  BoundsMonitor(const PhysicalModel& model, const PhaseSpaceGrid& grid, BoundsReport prior, double t0)
      : model_(model), grid_(grid), t0_(t0), started_(true), report_(std::move(prior)) {}
  void observe(const KineticState& state, int threads = 1);
  const BoundsReport& report() const noexcept { return report_; }

 private:
  PhysicalModel model_;
  const PhaseSpaceGrid& grid_;
  double t0_ = 0.0;
  bool started_ = false;
  BoundsReport report_;
};

BoundsReport bounds_check(const std::vector<KineticState>& history, const PhysicalModel& model,
                          const PhaseSpaceGrid& grid, int threads = 1);

}  // namespace bgkmix
