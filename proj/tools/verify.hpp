#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kgh/grid.hpp"
#include "kgh/output.hpp"

namespace kgh::cli {

inline const std::vector<std::string> verify_checks = {"isometry",  "grouplaw",     "partition", "reconstruction",
                                                       "strichartz", "uniformbound", "decay"};

struct CheckOutcome {
  bool pass = false;
  std::string detail;
  CsvTable table;
};

// Runs one named check. Without an explicit grid every check uses
// d=1, n=64, L=4π except decay, which needs the long box d=1, n=1024, L=256π.
CheckOutcome run_check(const std::string& name, const std::optional<GridSpec>& grid, std::uint64_t seed,
                       const OutputHeader& header);

}  // namespace kgh::cli
