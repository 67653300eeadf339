#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>

namespace bgkmix {

/// Fixed-capacity vector with a runtime length. Used for velocities (d <= 3)
/// and internal-energy means (l <= kMaxInternalDof) so per-node arithmetic
/// never allocates.
template <std::size_t Capacity>
class SmallVector {
 public:
  SmallVector() = default;
  explicit SmallVector(std::size_t size, double value = 0.0) : size_(size) {
    assert(size <= Capacity);
    for (std::size_t i = 0; i < size_; ++i) data_[i] = value;
  }
  SmallVector(std::initializer_list<double> values) : size_(values.size()) {
    assert(values.size() <= Capacity);
    std::size_t i = 0;
    for (double v : values) data_[i++] = v;
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }
  double* begin() noexcept { return data_.data(); }
  double* end() noexcept { return data_.data() + size_; }
  const double* begin() const noexcept { return data_.data(); }
  const double* end() const noexcept { return data_.data() + size_; }
  const double* data() const noexcept { return data_.data(); }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < size_; ++i) s += data_[i] * data_[i];
    return s;
  }
  double norm() const noexcept { return std::sqrt(norm_squared()); }

  SmallVector& operator+=(const SmallVector& o) noexcept {
    assert(o.size_ == size_);
    for (std::size_t i = 0; i < size_; ++i) data_[i] += o.data_[i];
    return *this;
  }
  SmallVector& operator-=(const SmallVector& o) noexcept {
    assert(o.size_ == size_);
    for (std::size_t i = 0; i < size_; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  SmallVector& operator*=(double s) noexcept {
    for (std::size_t i = 0; i < size_; ++i) data_[i] *= s;
    return *this;
  }

  friend SmallVector operator+(SmallVector a, const SmallVector& b) noexcept { return a += b; }
  friend SmallVector operator-(SmallVector a, const SmallVector& b) noexcept { return a -= b; }
  friend SmallVector operator*(double s, SmallVector a) noexcept { return a *= s; }
  friend SmallVector operator*(SmallVector a, double s) noexcept { return a *= s; }
  friend bool operator==(const SmallVector& a, const SmallVector& b) noexcept {
    if (a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a.data_[i] != b.data_[i]) return false;
    return true;
  }

 private:
  std::array<double, Capacity> data_{};
  std::size_t size_ = 0;
};

template <std::size_t N>
double dot(const SmallVector<N>& a, const SmallVector<N>& b) noexcept {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t N>
double distance_squared(const SmallVector<N>& a, const SmallVector<N>& b) noexcept {
  return (a - b).norm_squared();
}

inline constexpr std::size_t kMaxDimension = 3;
inline constexpr std::size_t kMaxInternalDof = 8;

using VelocityVector = SmallVector<kMaxDimension>;
using InternalVector = SmallVector<kMaxInternalDof>;

}  // namespace bgkmix
