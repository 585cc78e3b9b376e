#pragma once

#include <vector>

#include "kgh/grid.hpp"
#include "kgh/rational.hpp"

namespace kgh {

// Periodized Riesz potential |x|^{-γ}, defined spectrally:
// V̂(ξ) = c_{d,γ} |ξ|^{γ-d} for ξ ≠ 0 and V̂(0) = zero_mode.
struct HartreeKernel {
  double gamma = 2.5;
  int dimension = 3;
  double zero_mode = 0.0;
  double normalization = 0.0;

  // c_{d,γ} from the continuum transform of |x|^{-γ}; requires γ ∈ (0,3) and
  // γ < d so that the kernel is locally integrable and V̂ > 0.
  static HartreeKernel riesz(double gamma, int dimension, double zero_mode = 0.0);

  void validate() const;
  double symbol(double xi_norm) const;
  // V̂ over the lattice in flat frequency order.
  std::vector<double> table(const GridSpec& spec) const;
};

// c_{d,γ} = π^{d/2} 2^{d-γ} Γ((d-γ)/2) / Γ(γ/2) for the transform
// f̂(ξ) = ∫ f(x) e^{-iξ·x} dx.
double riesz_normalization(double gamma, int dimension);

// V ∗ |u|², computed as F⁻¹[V̂ F(|u|²)]; always real since |u|² is.
Field hartree_potential(const Field& u, const HartreeKernel& kernel);

// (V ∗ |u|²) u.
Field hartree_nonlinearity(const Field& u, const HartreeKernel& kernel);

// (V ∗ |u₁|²)(u₁ - u₂) + (V ∗ (|u₁|² - |u₂|²)) u₂, which equals
// N(u₁) - N(u₂).
Field nonlinearity_difference(const Field& u1, const Field& u2, const HartreeKernel& kernel);

// (1/4) ∬ |u(x)|² |u(y)|² V(x - y) dx dy = (1/(4 L^d)) Σ_ξ V̂(ξ) |F(|u|²)(ξ)|².
double hartree_energy(const Field& u, const HartreeKernel& kernel);

struct HlsExponents {
  Rational p1;
  Rational q1;
  Rational r1;
};

// Canonical choice q₁ = 3, p₁ = 3/2, r₁ = (4/3 - γ/3)^{-1} for γ ∈ (2,3),
// with 1/p₁ + 1/q₁ = 1, 1/r₁ + γ/3 - 1 = 1/q₁, r₁ < q₁ and r₁, p₁ ∈ (1,3].
HlsExponents hls_exponents(const Rational& gamma);

// ‖|·|^{-γ} ∗ |f|‖_{L^q} / ‖f‖_{L^p} with 1/q = 1/p + γ/d - 1 (d from the
// field's grid).
double hls_ratio(const Field& f, const Rational& p, const Rational& gamma);

}  // namespace kgh
