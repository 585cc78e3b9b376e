#pragma once

#include <span>

namespace kgh {

// Ordinary least-squares slope of y against x; NaN for fewer than two
// distinct x values.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace kgh
