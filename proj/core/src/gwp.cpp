#include "kgh/gwp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kgh/error.hpp"
#include "kgh/fourier.hpp"
#include "kgh/norms.hpp"
#include "kgh/propagators.hpp"
#include "kgh/stats.hpp"

namespace kgh {

FirstOrderState DataSplit::low_state() const { return to_first_order(position.low, velocity.low); }
FirstOrderState DataSplit::high_state() const { return to_first_order(position.high, velocity.high); }

DataSplit split_data(HighLowSplitter& position, HighLowSplitter& velocity, double N) {
  return {position.split(N), velocity.split(N)};
}

DataSplit split_data(const Field& f, const Field& g, double N, const ExponentTable& table) {
  HighLowSplitter a(f, table, 1.0), b(g, table, 0.0);
  return split_data(a, b, N);
}

Field vtilde(const FirstOrderState& state, const FirstOrderState& high) {
  const Field moved = kg_propagator(high.v.to_frequency(), state.t - high.t, PropagatorKind::half_wave);
  return state.v.to_frequency() - moved;
}

double sumspace_witness_norm(const FirstOrderState& state, const FirstOrderState& high, const ExponentTable& table) {
  const Field moved = kg_propagator(high.v.to_frequency(), state.t - high.t, PropagatorKind::half_wave);
  const Field rest = state.v.to_frequency() - moved;
  double rough = 0.0;
  if (moved.max_modulus() > 0.0) rough = modulation_norm(moved, split_params(table, 1.0));
  return sobolev_norm(rest, 1.0) + rough;
}

std::vector<double> sumspace_witness_norm(const Trajectory& trajectory, const DataSplit& split,
                                          const ExponentTable& table) {
  const FirstOrderState high = split.high_state();
  std::vector<double> out;
  out.reserve(trajectory.states.size());
  for (const auto& s : trajectory.states) out.push_back(sumspace_witness_norm(s, high, table));
  return out;
}

namespace {

double fit_growth(const std::vector<double>& times, const std::vector<double>& values, double from, double to) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] >= from && times[i] <= to && values[i] > 0.0) {
      xs.push_back(std::log1p(times[i]));
      ys.push_back(std::log(values[i]));
    }
  return least_squares_slope(xs, ys);
}

}  // namespace

GwpReport gwp_experiment(const Field& f, const Field& g, const GwpOptions& options) {
  if (options.gamma <= 2 || options.gamma >= 3)
    throw Error(ErrorKind::precondition_violation, "GWP experiment needs gamma in (2,3)");
  const Rational bound = Rational(54) / (Rational(27) - 2 * options.gamma);
  if (options.p <= 2 || options.p >= bound)
    throw Error(ErrorKind::precondition_violation,
                "GWP experiment needs p in (2, " + format_rational(bound) + "), got " + format_rational(options.p));
  if (!(f.spec() == g.spec())) throw Error(ErrorKind::grid_mismatch, "f and g on different grids");
  if (!f.is_real() || !g.is_real()) throw Error(ErrorKind::precondition_violation, "GWP experiment needs real data");
  if (!(options.T_max > 0.0)) throw Error(ErrorKind::invalid_parameter, "T_max must be positive");

  GwpReport report;
  report.table = exponent_table(options.gamma, options.p);
  if (f.max_modulus() == 0.0 && g.max_modulus() == 0.0) return report;

  const auto kernel = HartreeKernel::riesz(to_double(options.gamma), f.spec().dimension(), options.zero_mode);
  const double theta = to_double(report.table.theta);

  HighLowSplitter fs(f, report.table, 1.0), gs(g, report.table, 0.0);
  std::vector<FirstOrderState> highs;
  for (double N : options.N_schedule) {
    if (!(N > 0.0)) throw Error(ErrorKind::invalid_parameter, "N values must be positive");
    const DataSplit split = split_data(fs, gs, N);
    GwpRow row;
    row.N = N;
    row.theta = theta;
    row.I0 = hamiltonian(split.low_state().v, kernel);
    row.low_radius = split.position.radius;
    row.high_norm_position = split.position.high_norm;
    row.high_norm_velocity = split.velocity.high_norm;
    report.rows.push_back(row);
    highs.push_back(split.high_state());
  }
  report.I_traces.assign(report.rows.size(), {});

  const FirstOrderState initial = to_first_order(f, g);
  EvolveOptions ev;
  ev.T = options.T_max;
  ev.dt = options.dt;
  ev.sample_stride = options.sample_stride;
  ev.keep_states = false;
  ev.on_sample = [&](const FirstOrderState& s) {
    report.times.push_back(s.t);
    const Field free = kg_propagator(initial.v, s.t, PropagatorKind::half_wave);
    report.deviation.push_back(sobolev_norm(s.v - free, 1.0));
    for (std::size_t r = 0; r < highs.size(); ++r)
      report.I_traces[r].push_back(hamiltonian(vtilde(s, highs[r]), kernel));
  };
  evolve(initial, kernel, ev);

  std::vector<double> logN, logI0, logT;
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    auto& row = report.rows[r];
    const auto& trace = report.I_traces[r];
    const double limit = 2.0 * row.I0 * (1.0 + 1e-12);
    row.censored = true;
    row.T_certified = options.T_max;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      if (row.I0 > 0.0) row.max_I_ratio = std::max(row.max_I_ratio, trace[i] / row.I0);
      if (row.censored && trace[i] > limit) {
        row.censored = false;
        row.T_certified = i == 0 ? 0.0 : report.times[i - 1];
      }
    }
    if (row.I0 == 0.0) row.max_I_ratio = std::numeric_limits<double>::infinity();
    row.growth_slope = fit_growth(report.times, report.deviation, options.fit_start, row.T_certified);
    if (row.I0 > 0.0) {
      logN.push_back(std::log(row.N));
      logI0.push_back(std::log(row.I0));
    }
    if (row.T_certified > 0.0) logT.push_back(std::log(row.T_certified));
  }
  report.i0_slope = least_squares_slope(logN, logI0);
  if (logT.size() == logN.size()) report.window_slope = least_squares_slope(logN, logT);
  else report.window_slope = std::numeric_limits<double>::quiet_NaN();
  report.growth_slope = fit_growth(report.times, report.deviation, options.fit_start, options.T_max);
  return report;
}

}  // namespace kgh
