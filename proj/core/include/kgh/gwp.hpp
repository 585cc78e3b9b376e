#pragma once

#include <vector>

#include "kgh/exponents.hpp"
#include "kgh/hartree.hpp"
#include "kgh/solver.hpp"
#include "kgh/split.hpp"

namespace kgh {

// Both data components split at the same N: f with H¹ regularity, g with L².
struct DataSplit {
  SplitResult position;
  SplitResult velocity;

  // F_N = f_N + i B^{-1} g_N and F^N = f^N + i B^{-1} g^N (frequency rep).
  FirstOrderState low_state() const;
  FirstOrderState high_state() const;
};

DataSplit split_data(HighLowSplitter& position, HighLowSplitter& velocity, double N);
DataSplit split_data(const Field& f, const Field& g, double N, const ExponentTable& table);

// ṽ(t) = v(t) - e^{-itB} F^N.
Field vtilde(const FirstOrderState& state, const FirstOrderState& high);

// ‖ṽ(t)‖_{H¹} + ‖e^{-itB} F^N‖_{M^{p_γ,p_γ'}_1} at every stored state. An upper
// bound for the sum-space norm along this particular decomposition.
std::vector<double> sumspace_witness_norm(const Trajectory& trajectory, const DataSplit& split,
                                          const ExponentTable& table);
double sumspace_witness_norm(const FirstOrderState& state, const FirstOrderState& high, const ExponentTable& table);

struct GwpOptions {
  Rational gamma{5, 2};
  Rational p{11, 5};
  std::vector<double> N_schedule{2, 4, 8, 16};
  double T_max = 10.0;
  double dt = 2e-3;
  std::size_t sample_stride = 25;
  // Growth fits use samples with t ≥ fit_start.
  double fit_start = 1.0;
  double zero_mode = 0.0;
};

struct GwpRow {
  double N = 0.0;
  double theta = 0.0;
  double I0 = 0.0;
  double max_I_ratio = 0.0;
  // Largest sample time up to which I(t) ≤ 2 I(0) at every sample; equals
  // T_max when the bound never fails (a censored value).
  double T_certified = 0.0;
  bool censored = false;
  // Slope of log ‖v(t) - e^{-itB}v(0)‖_{H¹} against log(1+t) on
  // [fit_start, T_certified].
  double growth_slope = 0.0;
  double low_radius = -1.0;
  double high_norm_position = 0.0;
  double high_norm_velocity = 0.0;
};

struct GwpReport {
  ExponentTable table;
  std::vector<GwpRow> rows;
  // log I(0) against log N over the rows.
  double i0_slope = 0.0;
  // log T_certified against log N.
  double window_slope = 0.0;
  // Growth slope over the whole horizon [fit_start, T_max].
  double growth_slope = 0.0;
  std::vector<double> times;
  std::vector<double> deviation;                 // ‖v(t) - e^{-itB}v(0)‖_{H¹}
  std::vector<std::vector<double>> I_traces;     // per row
};

// Requires γ ∈ (2,3), p ∈ (2, 54/(27-2γ)) and real f, g. Zero data gives an
// empty row list.
GwpReport gwp_experiment(const Field& f, const Field& g, const GwpOptions& options);

}  // namespace kgh
