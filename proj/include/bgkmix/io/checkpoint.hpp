#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "bgkmix/core/field.hpp"
#include "bgkmix/core/grid.hpp"

namespace bgkmix {

/// Binary layout (host byte order):
///   "BGKMIXCP" | u32 version | u32 model (0 = a, 1 = b) | u64 grid hash |
///   f64 time | u64 steps | string metadata | per species: field f, vector theta, field M
/// A string is u64 length + bytes, a vector u64 count + f64 values, a field
/// three u64 extents + f64 values.
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  KineticState state;
  std::uint64_t grid_hash = 0;
  /// Free text stored alongside the state (the CLI stores the run config).
  std::string metadata;
};

/// Throws IoError when the file cannot be written.
void save_checkpoint(const std::filesystem::path& path, const KineticState& state, const PhaseSpaceGrid& grid,
                     const std::string& metadata = {});

/// Throws IoError on unreadable, truncated or foreign files.
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// As above, and throws ConfigError when the stored grid hash differs from grid.hash().
Checkpoint load_checkpoint(const std::filesystem::path& path, const PhaseSpaceGrid& grid);

}  // namespace bgkmix
