#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "bgkmix/core/grid.hpp"
#include "bgkmix/core/params.hpp"

namespace bgkmix {

/// One species' distribution (or auxiliary M_k, g_k) sampled on x * v * eta.
/// Storage is [x][v][eta], eta fastest.
class DistributionField {
 public:
  DistributionField() = default;
  DistributionField(std::size_t space, std::size_t velocity, std::size_t internal, double value = 0.0)
      : space_(space), velocity_(velocity), internal_(internal), data_(space * velocity * internal, value) {}

  static DistributionField for_species(const PhaseSpaceGrid& grid, int k, double value = 0.0) {
    return DistributionField(grid.space.size(), grid[k].velocity_size, grid[k].internal_size, value);
  }

  std::size_t space_size() const noexcept { return space_; }
  std::size_t velocity_size() const noexcept { return velocity_; }
  std::size_t internal_size() const noexcept { return internal_; }
  std::size_t node_size() const noexcept { return velocity_ * internal_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  std::vector<double>& values() noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  std::size_t index(std::size_t ix, std::size_t iv, std::size_t ie) const noexcept {
    return (ix * velocity_ + iv) * internal_ + ie;
  }
  double& operator()(std::size_t ix, std::size_t iv, std::size_t ie) noexcept { return data_[index(ix, iv, ie)]; }
  double operator()(std::size_t ix, std::size_t iv, std::size_t ie) const noexcept {
    return data_[index(ix, iv, ie)];
  }

  /// All (v, eta) values at spatial node ix.
  std::span<double> node(std::size_t ix) noexcept { return {data_.data() + ix * node_size(), node_size()}; }
  std::span<const double> node(std::size_t ix) const noexcept {
    return {data_.data() + ix * node_size(), node_size()};
  }

  DistributionField& operator*=(double c) noexcept {
    for (double& v : data_) v *= c;
    return *this;
  }
  DistributionField& operator+=(const DistributionField& o) noexcept {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  friend bool operator==(const DistributionField&, const DistributionField&) = default;

 private:
  std::size_t space_ = 0;
  std::size_t velocity_ = 0;
  std::size_t internal_ = 0;
  std::vector<double> data_;
};

/// The evolving state. Model a carries Theta_k over x; model b carries the
/// full M_k fields.
struct KineticState {
  double time = 0.0;
  ModelVariant model = ModelVariant::a;
  std::array<DistributionField, 2> f;
  std::array<std::vector<double>, 2> theta;
  std::array<DistributionField, 2> maxwellian;
  std::size_t steps = 0;

  friend bool operator==(const KineticState&, const KineticState&) = default;
};

}  // namespace bgkmix
