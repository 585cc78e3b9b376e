#pragma once

#include <span>
#include <vector>

#include "kgh/grid.hpp"
#include "kgh/modulation.hpp"
#include "kgh/rational.hpp"

namespace kgh {

enum class PropagatorKind {
  sine,       // K(t):  sin(t⟨ξ⟩)/⟨ξ⟩
  cosine,     // K'(t): cos(t⟨ξ⟩)
  half_wave,  // e^{-itB}: e^{-it⟨ξ⟩}
};

Field kg_propagator(const Field& field, double t, PropagatorKind kind);

// (u, u_t) on a common grid.
struct PairState {
  Field position;
  Field velocity;
};

// ‖u‖²_{H¹} + ‖u_t‖²_{L²}.
double energy_norm_sq(const PairState& state);

// The linear Klein-Gordon group
//   (f, g) ↦ (K'(t)f + K(t)g, (Δ - I)K(t)f + K'(t)g),
// applied exactly per mode.
PairState kg_matrix(const PairState& state, double t);

// Wave admissibility 1/q + (d-1)/(2r) ≤ (d-1)/4 with q ∈ [2, ∞], r ∈ [2, ∞).
struct AdmissiblePair {
  ExtRational q;
  Rational r;
  int dimension;

  bool is_admissible() const;
};

// q solving 1/q + d/r = d/2 - 1, i.e. 1/q = d(1/2 - 1/r) - 1. Returns ∞ when
// the reciprocal is 0 and throws no_admissible_q when it is negative or
// exceeds 1/2.
ExtRational gap_q(const Rational& r, int dimension);

// (∫_0^T ‖u(t)‖_{L^r}^q dt)^{1/q} by the composite trapezoid rule over uniform
// samples spaced dt apart; max over samples when q = ∞.
double spacetime_norm(std::span<const Field> samples, double dt, double q, double r);

enum class ProbeMode { uniform, decay };

struct ProbeReport {
  ProbeMode mode = ProbeMode::uniform;
  // uniform: sup over the time grid of (‖K(t)f‖_{M_{s+1}} + ‖K'(t)f‖_{M_s}) / ‖f‖_{M_s}.
  double sup_ratio = 0.0;
  // decay: least-squares slope of log ‖G(t)f‖_{M^{p_θ,q}_s} against log(1+t)
  // on t ∈ [1, T_max], where 1/p_θ = (1-θ)/2 + θ/p, and the predicted slope
  // -dθ(1/2 - 1/p).
  double fitted_exponent = 0.0;
  double predicted_exponent = 0.0;
  double t_max = 0.0;
  std::vector<double> times;
  std::vector<double> values;  // ratio trace (uniform) or norms (decay)
};

// `samples` is the number of time points on the probe grid.
ProbeReport propagator_bound_probe(const Field& field, const ModulationParams& params, double T, ProbeMode mode,
                                   double theta, int samples = 24);

// Fraction of ‖f‖₂² lying outside the periodic ball |x - x₀| < radius, with x₀
// the location of max |f|.
double energy_outside(const Field& field, double radius);

}  // namespace kgh
