#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "kgh/grid.hpp"

namespace kgh {

// Binary field snapshot, little-endian:
//   "MKGH" | u32 version=1 | u32 d | u32 n | f64 L | f64 γ (NaN when no kernel
//   is attached) | f64 t | u8 representation | n^d × (f64 re, f64 im)
// with values in row-major lattice order.
struct Snapshot {
  Field field;
  double t = 0.0;
  std::optional<double> gamma;
};

void write_snapshot(const std::filesystem::path& path, const Field& field, double t,
                    std::optional<double> gamma = std::nullopt);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace kgh
