#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "kgh/grid.hpp"
#include "kgh/hartree.hpp"
#include "kgh/propagators.hpp"

namespace kgh {

// v = u + i B^{-1} u_t with B = (1 - Δ)^{1/2}; the wave equation becomes
// i v_t = B v + B^{-1} N(Re v) with N(u) = (V ∗ |u|²) u.
struct FirstOrderState {
  Field v;
  double t = 0.0;
};

FirstOrderState to_first_order(const Field& f, const Field& g, double t = 0.0);
// (Re v, B Im v), both in physical representation.
PairState from_first_order(const FirstOrderState& state);

struct EnergyRecord {
  double energy = 0.0;                  // E
  std::array<double, 3> momentum{};     // P_i = ∫ Re(conj(u_t) ∂_i u) dx
  double hamiltonian = 0.0;             // H
};

// H(v) = ∫ ½|Bv|² + ¼ (V ∗ |Re v|²) |Re v|² dx.
double hamiltonian(const Field& v, const HartreeKernel& kernel);

EnergyRecord diagnostics(const PairState& state, const HartreeKernel& kernel);
EnergyRecord diagnostics(const FirstOrderState& state, const HartreeKernel& kernel);

struct DiagnosticRecord {
  double t = 0.0;
  EnergyRecord conserved;
  double I = 0.0;           // H(ṽ)
  double vtilde_h1 = 0.0;   // ‖ṽ‖_{H¹}
  double witness = 0.0;     // sum-space witness norm
};

struct Trajectory {
  std::vector<double> times;
  std::vector<FirstOrderState> states;  // empty when states are not kept
  std::vector<DiagnosticRecord> diagnostics;
};

// Grid-level nonlinearity shared by every integrator:
// u ↦ P[(V ∗ |u|²) u], where P keeps lattice modes with |k_a| ≤ n/3 on every
// axis when dealiasing is on.
class DiscreteNonlinearity {
 public:
  DiscreteNonlinearity(const GridSpec& spec, const HartreeKernel& kernel, bool dealias = true);

  const GridSpec& spec() const noexcept { return spec_; }
  bool dealias() const noexcept { return dealias_; }

  // Frequency coefficients of P N(u) from physical samples of u.
  void apply(std::span<const Complex> u_physical, std::span<Complex> out_hat) const;
  Field apply(const Field& u) const;

  // True when f has no content (beyond 1e-12 · max |f̂|) outside the band.
  bool within_band(const Field& f) const;
  std::span<const double> mask() const noexcept { return mask_; }

 private:
  GridSpec spec_;
  bool dealias_;
  std::vector<double> kernel_;
  std::vector<double> mask_;
  mutable std::vector<Complex> scratch_;
};

struct EvolveOptions {
  double T = 1.0;
  double dt = 1e-3;
  // Diagnostics (and states) every sample_stride steps, plus t = 0.
  std::size_t sample_stride = 1;
  bool keep_states = true;
  bool dealias = true;
  std::function<void(const FirstOrderState&)> on_sample;
};

// Integrates i v_t = B v + B^{-1} N(Re v) by the interaction-picture
// (Lawson) RK4 scheme: the linear flow e^{-itB} is exact, RK4 handles the
// rotated nonlinearity. Throws Instability on non-finite values.
Trajectory evolve(const Field& f, const Field& g, const HartreeKernel& kernel, const EvolveOptions& options);
Trajectory evolve(const FirstOrderState& initial, const HartreeKernel& kernel, const EvolveOptions& options);

// u(t_i) and u_t(t_i) at t_i = i·dt.
struct SampledPath {
  double dt = 0.0;
  std::vector<Field> position;
  std::vector<Field> velocity;
};

// Free evolution K'(t)f + K(t)g sampled on [0, T] with `intervals` steps.
SampledPath free_path(const Field& f, const Field& g, double T, std::size_t intervals);

// Φ(u)(t) = K'(t)f + K(t)g - ∫_0^t K(t-τ) N(u(τ)) dτ at every sample time,
// with the composite trapezoid rule over the candidate samples. The velocity
// of the result is ∂_t Φ(u).
SampledPath duhamel_map(const SampledPath& candidate, const Field& f, const Field& g, const DiscreteNonlinearity& nonlinearity);

struct ContractionRecord {
  std::vector<double> distances;  // sup_t ‖u^{(k+1)} - u^{(k)}‖_{L²}
  std::vector<double> ratios;     // successive distance ratios
  int iterations = 0;
  double residual = 0.0;
};

struct PicardOptions {
  double T = 0.1;
  std::size_t intervals = 50;
  double tol = 1e-10;
  int max_iter = 50;
  bool dealias = true;
};

struct PicardResult {
  SampledPath path;
  Trajectory trajectory;
  ContractionRecord record;
};

// Iterates u ← Φ(u) from the free evolution until successive iterates are
// within tol in sup_t L². Throws no_contraction after three consecutive
// ratios above 1 and NonConvergence after max_iter iterations. T ≤ 1.
PicardResult picard_solve(const Field& f, const Field& g, const HartreeKernel& kernel, const PicardOptions& options);

// min(1, 1/(8 ‖(f,g)‖²)) with the H¹×L² norm as the data-size witness.
double contraction_window(const Field& f, const Field& g);

struct StrichartzPair {
  double q;
  double r;
};

// ‖u‖_{L^q_T L^r} / (‖f‖_{H¹} + ‖g‖_{L²} + ‖(V ∗ |u|²)u‖_{L¹_T L²}) for each
// pair, along the evolve trajectory of (f, g) on [0, T].
std::vector<double> strichartz_ratios(const Field& f, const Field& g, const HartreeKernel& kernel,
                                      std::span<const StrichartzPair> pairs, double T, double dt);

}  // namespace kgh
