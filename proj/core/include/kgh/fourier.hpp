#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kgh/grid.hpp"

namespace kgh {

enum class Direction { forward, inverse };

// Physical -> frequency (forward) or frequency -> physical (inverse). The
// field must be in the opposite representation, otherwise a contract
// violation is thrown.
Field transform(const Field& field, Direction direction);

// Raw normalized transforms on flat buffers of spec.size() values; `in` and
// `out` may alias. Forward multiplies by (L/n)^d, inverse by 1/L^d.
void forward_dft(const GridSpec& spec, std::span<const Complex> in, std::span<Complex> out);
void inverse_dft(const GridSpec& spec, std::span<const Complex> in, std::span<Complex> out);

using Symbol = std::function<Complex(const Frequency&)>;

// Multiplies every frequency coefficient by symbol(ξ_k). The result keeps the
// input representation. A non-finite symbol value raises singular_symbol.
Field apply_multiplier(const Field& field, const Symbol& symbol);

// Same, with the symbol tabulated in flat frequency order.
Field apply_multiplier(const Field& field, std::span<const Complex> table);
Field apply_multiplier(const Field& field, std::span<const double> table);

// ⟨ξ⟩ = (1 + |ξ|²)^{1/2}.
double japanese_bracket(const Frequency& xi) noexcept;

// Bessel potential (1 - Δ)^{σ/2}, symbol ⟨ξ⟩^σ.
Field bessel_power(const Field& field, double sigma);

// f(|ξ|²) evaluated over the lattice in flat frequency order.
std::vector<double> tabulate_radial(const GridSpec& spec, const std::function<double(double)>& fn);

}  // namespace kgh
