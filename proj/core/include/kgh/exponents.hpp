#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgh/rational.hpp"

namespace kgh {

// Exact exponent bookkeeping for the Hartree problem with kernel |x|^{-γ} and
// data regularity index p. θ interpolates 1/p = (1-θ)/2 + θ/p_γ.
struct ExponentTable {
  Rational gamma;
  Rational p;
  Rational p_gamma;             // 18/(9-2γ)
  Rational p_gamma_conjugate;   // p_γ'
  Rational gwp_bound;           // 54/(27-2γ)
  Rational theta;
  std::optional<Rational> split_exp;   // θ/(1-θ), θ < 1
  std::optional<Rational> energy_exp;  // 4θ/(1-θ), θ < 1
  std::optional<Rational> growth_exp;  // 2θ/(1-3θ), θ < 1/3
  std::optional<Rational> window_exp;  // 1 - 2θ/(1-θ), θ < 1

  struct Entry {
    std::string name;
    std::optional<Rational> value;
  };
  std::vector<Entry> entries() const;
};

// Hölder conjugate p' with 1/p + 1/p' = 1; p = 1 is rejected (p' = ∞).
Rational conjugate_exponent(const Rational& p);

// Requires γ ∈ (0,3) and p ∈ [2, p_γ].
ExponentTable exponent_table(const Rational& gamma, const Rational& p);

}  // namespace kgh
