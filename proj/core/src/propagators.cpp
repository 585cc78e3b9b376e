#include "kgh/propagators.hpp"

#include <algorithm>
#include <cmath>

#include "kgh/error.hpp"
#include "kgh/fourier.hpp"
#include "kgh/norms.hpp"
#include "kgh/stats.hpp"

namespace kgh {

Field kg_propagator(const Field& field, double t, PropagatorKind kind) {
  const auto& spec = field.spec();
  std::vector<Complex> table(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double w = std::sqrt(1.0 + spec.frequency_norm_sq(i));
    switch (kind) {
      case PropagatorKind::sine: table[i] = std::sin(t * w) / w; break;
      case PropagatorKind::cosine: table[i] = std::cos(t * w); break;
      case PropagatorKind::half_wave: table[i] = std::polar(1.0, -t * w); break;
    }
  }
  return apply_multiplier(field, std::span<const Complex>(table));
}

double energy_norm_sq(const PairState& state) {
  const double u = sobolev_norm(state.position, 1.0);
  const double ut = sobolev_norm(state.velocity, 0.0);
  return u * u + ut * ut;
}

PairState kg_matrix(const PairState& state, double t) {
  const auto& spec = state.position.spec();
  if (!(spec == state.velocity.spec())) throw Error(ErrorKind::grid_mismatch, "position and velocity on different grids");
  const Field f = state.position.to_frequency();
  const Field g = state.velocity.to_frequency();
  Field u(spec, Representation::frequency), ut(spec, Representation::frequency);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double w = std::sqrt(1.0 + spec.frequency_norm_sq(i));
    const double c = std::cos(t * w), s = std::sin(t * w);
    u[i] = c * f[i] + (s / w) * g[i];
    ut[i] = -w * s * f[i] + c * g[i];
  }
  const bool phys_u = state.position.is_physical();
  const bool phys_ut = state.velocity.is_physical();
  return {phys_u ? u.to_physical() : u, phys_ut ? ut.to_physical() : ut};
}

bool AdmissiblePair::is_admissible() const {
  if (dimension < 1) return false;
  if (r < 2) return false;
  if (!q.is_infinite() && q.value() < 2) return false;
  const Rational lhs = q.reciprocal() + Rational(dimension - 1) / (2 * r);
  return lhs <= Rational(dimension - 1, 4);
}

ExtRational gap_q(const Rational& r, int dimension) {
  if (r < 2) throw Error(ErrorKind::invalid_parameter, "gap condition needs r >= 2, got " + format_rational(r));
  const Rational recip = dimension * (Rational(1, 2) - Rational(1) / r) - 1;
  if (recip == Rational(0)) return ExtRational::infinity();
  if (recip < 0 || recip > Rational(1, 2))
    throw Error(ErrorKind::no_admissible_q, "1/q = " + format_rational(recip) + " for r = " + format_rational(r) +
                                                ", d = " + std::to_string(dimension) + " is outside [0, 1/2]");
  return ExtRational(Rational(1) / recip);
}

double spacetime_norm(std::span<const Field> samples, double dt, double q, double r) {
  if (samples.empty()) throw Error(ErrorKind::invalid_parameter, "space-time norm of an empty trajectory");
  if (!(q >= 1.0) || !(r >= 1.0)) throw Error(ErrorKind::invalid_parameter, "space-time exponents must be >= 1");
  if (std::isinf(q)) {
    double best = 0.0;
    for (const auto& f : samples) best = std::max(best, lebesgue_norm(f, r));
    return best;
  }
  if (samples.size() == 1) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double w = (i == 0 || i + 1 == samples.size()) ? 0.5 : 1.0;
    acc += w * std::pow(lebesgue_norm(samples[i], r), q);
  }
  return std::pow(dt * acc, 1.0 / q);
}

double energy_outside(const Field& field, double radius) {
  const Field f = field.to_physical();
  const auto& spec = f.spec();
  std::size_t peak = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    total += std::norm(f[i]);
    if (std::abs(f[i]) > std::abs(f[peak])) peak = i;
  }
  if (total == 0.0) return 0.0;
  const auto x0 = spec.position(peak);
  const double L = spec.period();
  double outside = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = spec.position(i);
    double r2 = 0.0;
    for (int a = 0; a < spec.dimension(); ++a) {
      double dx = std::fmod(std::abs(x[a] - x0[a]), L);
      dx = std::min(dx, L - dx);
      r2 += dx * dx;
    }
    if (r2 >= radius * radius) outside += std::norm(f[i]);
  }
  return outside / total;
}

ProbeReport propagator_bound_probe(const Field& field, const ModulationParams& params, double T, ProbeMode mode,
                                   double theta, int samples) {
  validate(params);
  if (!(T > 0.0)) throw Error(ErrorKind::invalid_parameter, "probe horizon T must be positive");
  if (samples < 2) throw Error(ErrorKind::invalid_parameter, "probe needs at least two time samples");
  const auto weights = standard_partition(field.spec());
  ProbeReport report;
  report.mode = mode;

  if (mode == ProbeMode::uniform) {
    const double base = modulation_norm(field, params, *weights);
    if (!(base > 0.0)) throw Error(ErrorKind::precondition_violation, "uniform probe needs a nonzero field");
    ModulationParams lifted = params;
    lifted.s += 1.0;
    const Field hat = field.to_frequency();
    for (int i = 0; i < samples; ++i) {
      const double t = T * i / (samples - 1);
      const double ratio = (modulation_norm(kg_propagator(hat, t, PropagatorKind::sine), lifted, *weights) +
                            modulation_norm(kg_propagator(hat, t, PropagatorKind::cosine), params, *weights)) /
                           base;
      report.times.push_back(t);
      report.values.push_back(ratio);
      report.sup_ratio = std::max(report.sup_ratio, ratio);
    }
    report.t_max = T;
    return report;
  }

  if (params.p < 2.0) throw Error(ErrorKind::precondition_violation, "decay probe needs p >= 2");
  if (theta < 0.0 || theta > 1.0) throw Error(ErrorKind::invalid_parameter, "theta must lie in [0,1]");
  const auto& spec = field.spec();
  if (energy_outside(field, 0.25 * spec.period()) > 1e-6)
    throw Error(ErrorKind::precondition_violation, "decay probe needs a field localized within L/4 of its peak");

  const double inv_p = std::isinf(params.p) ? 0.0 : 1.0 / params.p;
  ModulationParams interpolated = params;
  interpolated.p = 1.0 / ((1.0 - theta) * 0.5 + theta * inv_p);
  report.predicted_exponent = -spec.dimension() * theta * (0.5 - inv_p);
  report.t_max = std::min(T, 0.25 * spec.period());
  if (!(report.t_max > 1.0)) throw Error(ErrorKind::invalid_parameter, "decay probe window [1, T_max] is empty");

  const Field hat = field.to_frequency();
  std::vector<double> xs, ys;
  for (int i = 0; i < samples; ++i) {
    const double t = std::exp(std::log(report.t_max) * i / (samples - 1));  // log-spaced on [1, T_max]
    const double value = modulation_norm(kg_propagator(hat, -t, PropagatorKind::half_wave), interpolated, *weights);
    report.times.push_back(t);
    report.values.push_back(value);
    xs.push_back(std::log1p(t));
    ys.push_back(std::log(value));
  }
  report.fitted_exponent = least_squares_slope(xs, ys);
  return report;
}

}  // namespace kgh
