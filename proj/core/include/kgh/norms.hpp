#pragma once

#include <limits>

#include "kgh/grid.hpp"

namespace kgh {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct NormSpec {
  enum class Kind { lebesgue, sobolev };

  Kind kind;
  // p for lebesgue (in [1, ∞]), s for sobolev.
  double exponent;

  static NormSpec lebesgue(double p) { return {Kind::lebesgue, p}; }
  static NormSpec sobolev(double s) { return {Kind::sobolev, s}; }
};

// lebesgue(p): ((L/n)^d Σ_j |f(x_j)|^p)^{1/p}, max |f| for p = ∞.
// sobolev(s):  (L^{-d} Σ_k ⟨ξ_k⟩^{2s} |f̂(ξ_k)|²)^{1/2}, so sobolev(0) equals
// lebesgue(2) by Parseval.
double norm(const Field& field, const NormSpec& spec);

double lebesgue_norm(const Field& field, double p);
double sobolev_norm(const Field& field, double s);

}  // namespace kgh
