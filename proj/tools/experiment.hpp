#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "kgh/config.hpp"
#include "kgh/grid.hpp"
#include "kgh/hartree.hpp"
#include "kgh/output.hpp"

namespace kgh::cli {

// d, n and L (or m, with L = 2πm); defaults d = 3, n = 32, m = 2.
GridSpec grid_from_config(const ExperimentConfig& cfg);

// "d=1,n=64,L=4pi" (m=... also accepted).
GridSpec parse_grid(std::string_view text);

HartreeKernel kernel_from_config(const ExperimentConfig& cfg, int dimension);

// Initial position and velocity in physical representation.
//   corpus:     f = first corpus field, g = data.velocity · B(second field)
//   gaussian:   f = amplitude · exp(-|x - c|²/(2 width²)) at the box center, g = 0
//   plane_wave: f = amplitude · cos(2π band x₁ / L) with band ≥ 1, g = 0
//   zero:       f = g = 0
std::pair<Field, Field> initial_data(const ExperimentConfig& cfg, const GridSpec& grid);

std::uint64_t data_seed(const ExperimentConfig& cfg);

// Command, config hash, seed, tool version, generator, then every config entry.
OutputHeader make_header(std::string_view command, const ExperimentConfig& cfg);

}  // namespace kgh::cli
