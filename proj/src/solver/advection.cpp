#include "bgkmix/solver/advection.hpp"

#include <algorithm>
#include <cmath>

#include "bgkmix/core/errors.hpp"
#include "bgkmix/core/parallel.hpp"

namespace bgkmix {
namespace {

constexpr double kLimiterSafety = 1.0 - 1e-12;

std::size_t wrap(long long i, std::size_t n) {
  const auto m = static_cast<long long>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

// Scratch for one periodic line of `cols` interleaved columns.
struct LineBuffers {
  std::vector<double> in, out, low;
};

// Shifts one line in place: line[i] <- line(i - s) for s = p + theta.
void shift_line(double* line, std::size_t n, std::size_t cols, std::size_t stride, long long p, double theta,
                const std::vector<double>& w, bool limit, LineBuffers& buf) {
  buf.in.resize(n * cols);
  buf.out.resize(n * cols);
  for (std::size_t i = 0; i < n; ++i)
    std::copy_n(line + i * stride, cols, buf.in.data() + i * cols);

  if (theta == 0.0) {
    for (std::size_t i = 0; i < n; ++i)
      std::copy_n(buf.in.data() + wrap(static_cast<long long>(i) - p, n) * cols, cols, line + i * stride);
    return;
  }

  const long long half = static_cast<long long>(w.size() / 2);
  std::fill(buf.out.begin(), buf.out.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double* o = buf.out.data() + i * cols;
    const long long base = static_cast<long long>(i) - p;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double* src = buf.in.data() + wrap(base - half + static_cast<long long>(j), n) * cols;
      const double wj = w[j];
      for (std::size_t c = 0; c < cols; ++c) o[c] += wj * src[c];
    }
  }

  if (limit) {
    // Per column: theta_c = min over negative points of g_L / (g_L - g_HO).
    std::vector<double> blend(cols, 1.0);
    bool any = false;
    for (std::size_t i = 0; i < n && !any; ++i)
      for (std::size_t c = 0; c < cols; ++c)
        if (buf.out[i * cols + c] < 0.0) {
          any = true;
          break;
        }
    if (any) {
      buf.low.resize(n * cols);
      for (std::size_t i = 0; i < n; ++i) {
        const long long base = static_cast<long long>(i) - p;
        const double* left = buf.in.data() + wrap(base - 1, n) * cols;
        const double* right = buf.in.data() + wrap(base, n) * cols;
        for (std::size_t c = 0; c < cols; ++c) buf.low[i * cols + c] = theta * left[c] + (1.0 - theta) * right[c];
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < cols; ++c) {
          const double ho = buf.out[i * cols + c];
          if (ho < 0.0) {
            const double lo = buf.low[i * cols + c];
            blend[c] = std::min(blend[c], lo / (lo - ho) * kLimiterSafety);
          }
        }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < cols; ++c) {
          if (blend[c] == 1.0) continue;
          const double lo = buf.low[i * cols + c];
          buf.out[i * cols + c] = lo + blend[c] * (buf.out[i * cols + c] - lo);
        }
    }
  }
  for (std::size_t i = 0; i < n; ++i) std::copy_n(buf.out.data() + i * cols, cols, line + i * stride);
}

// Core: data laid out [x][v][c]; every velocity block is shifted along each axis.
void advect_blocks(double* data, std::size_t nv, std::size_t cols, const SpeciesGrid& grid, const SpatialGrid& space,
                   double dt, const AdvectionOptions& options, int threads) {
  if (dt < 0.0) throw ConfigError("advection time step must be non-negative");
  check_advection_options(options);
  if (dt == 0.0) return;
  const std::size_t nx = space.size();
  const std::size_t row = nv * cols;
  parallel_for(nv, threads, [&](std::size_t begin, std::size_t end) {
    LineBuffers buf;
    for (std::size_t iv = begin; iv < end; ++iv) {
      for (int a = 0; a < space.dim; ++a) {
        const double s = grid.velocity(iv, a) * dt / space.spacing[static_cast<std::size_t>(a)];
        const double fl = std::floor(s);
        const long long p = static_cast<long long>(fl);
        const double theta = s - fl;
        if (p == 0 && theta == 0.0) continue;
        const std::vector<double> w = theta == 0.0 ? std::vector<double>{} : lagrange_weights(theta, options.stencil);
        const std::size_t n = static_cast<std::size_t>(space.nodes[static_cast<std::size_t>(a)]);
        const std::size_t xstride = space.stride(a);
        for (std::size_t flat = 0; flat < nx; ++flat) {
          if (space.index_along(flat, a) != 0) continue;
          double* line = data + flat * row + iv * cols;
          shift_line(line, n, cols, xstride * row, p, theta, w, options.limit_positivity, buf);
        }
      }
    }
  });
}

}  // namespace

void check_advection_options(const AdvectionOptions& options) {
  if (options.stencil < 2 || options.stencil > 12 || options.stencil % 2 != 0)
    throw ConfigError("advection stencil must be an even number between 2 and 12");
}

std::vector<double> lagrange_weights(double theta, int stencil) {
  const int half = stencil / 2;
  std::vector<double> w(static_cast<std::size_t>(stencil));
  const double x = -theta;
  for (int j = -half; j < half; ++j) {
    double p = 1.0;
    for (int m = -half; m < half; ++m)
      if (m != j) p *= (x - m) / static_cast<double>(j - m);
    w[static_cast<std::size_t>(j + half)] = p;
  }
  return w;
}

void advect(DistributionField& f, const SpeciesGrid& species_grid, const SpatialGrid& space, double dt,
            const AdvectionOptions& options, int threads) {
  advect_blocks(f.data(), f.velocity_size(), f.internal_size(), species_grid, space, dt, options, threads);
}

DistributionField advected(const DistributionField& f, const SpeciesGrid& species_grid, const SpatialGrid& space,
                           double dt, const AdvectionOptions& options, int threads) {
  DistributionField out = f;
  advect(out, species_grid, space, dt, options, threads);
  return out;
}

void advect_columns(std::vector<double>& data, std::size_t columns, const SpeciesGrid& species_grid,
                    const SpatialGrid& space, double dt, const AdvectionOptions& options, int threads) {
  advect_blocks(data.data(), species_grid.velocity_size, columns, species_grid, space, dt, options, threads);
}

}  // namespace bgkmix
