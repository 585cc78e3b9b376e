#include "kgh/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgh/error.hpp"
#include "kgh/fourier.hpp"
#include "kgh/norms.hpp"

namespace kgh {

namespace {

std::vector<double> bracket_table(const GridSpec& spec) {
  return tabulate_radial(spec, [](double r2) { return std::sqrt(1.0 + r2); });
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.spec() == b.spec())) throw Error(ErrorKind::grid_mismatch, "fields live on different grids");
}

bool all_finite(std::span<const Complex> v) {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace

FirstOrderState to_first_order(const Field& f, const Field& g, double t) {
  require_same_grid(f, g);
  const auto w = bracket_table(f.spec());
  Field v = f.to_frequency();
  const Field gh = g.to_frequency();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += Complex(0.0, 1.0) * gh[i] / w[i];
  return {std::move(v), t};
}

PairState from_first_order(const FirstOrderState& state) {
  const Field v = state.v.to_frequency();
  const auto w = bracket_table(v.spec());
  Field vb = v;
  for (std::size_t i = 0; i < v.size(); ++i) vb[i] *= w[i];
  // Re v and Im(Bv); B commutes with complex conjugation on real symbols.
  Field u = v.to_physical().real_part();
  Field ut = vb.to_physical().imag_part();
  return {std::move(u), std::move(ut)};
}

double hamiltonian(const Field& v, const HartreeKernel& kernel) {
  const double b = sobolev_norm(v, 1.0);
  return 0.5 * b * b + hartree_energy(v.to_physical().real_part(), kernel);
}

EnergyRecord diagnostics(const PairState& state, const HartreeKernel& kernel) {
  require_same_grid(state.position, state.velocity);
  const auto& spec = state.position.spec();
  EnergyRecord rec;
  rec.energy = 0.5 * energy_norm_sq(state) + hartree_energy(state.position, kernel);

  const Field uh = state.position.to_frequency();
  const Field ut = state.velocity.to_physical();
  for (int a = 0; a < spec.dimension(); ++a) {
    Field du(spec, Representation::frequency);
    for (std::size_t i = 0; i < spec.size(); ++i) du[i] = Complex(0.0, spec.frequency(i)[a]) * uh[i];
    const Field dx = du.to_physical();
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) sum += (std::conj(ut[i]) * dx[i]).real();
    rec.momentum[a] = sum * spec.cell_volume();
  }

  const FirstOrderState v = to_first_order(state.position, state.velocity);
  rec.hamiltonian = hamiltonian(v.v, kernel);
  return rec;
}

EnergyRecord diagnostics(const FirstOrderState& state, const HartreeKernel& kernel) {
  return diagnostics(from_first_order(state), kernel);
}

DiscreteNonlinearity::DiscreteNonlinearity(const GridSpec& spec, const HartreeKernel& kernel, bool dealias)
    : spec_(spec), dealias_(dealias), kernel_(kernel.table(spec)), mask_(spec.size(), 1.0), scratch_(spec.size()) {
  if (dealias_) {
    const double band = spec.points() / 3.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const auto k = spec.lattice(i);
      for (int a = 0; a < spec.dimension(); ++a)
        if (std::abs(k[a]) > band) mask_[i] = 0.0;
    }
  }
}

void DiscreteNonlinearity::apply(std::span<const Complex> u, std::span<Complex> out) const {
  const std::size_t n = spec_.size();
  for (std::size_t i = 0; i < n; ++i) scratch_[i] = std::norm(u[i]);
  forward_dft(spec_, scratch_, scratch_);
  for (std::size_t i = 0; i < n; ++i) scratch_[i] *= kernel_[i];
  inverse_dft(spec_, scratch_, scratch_);
  for (std::size_t i = 0; i < n; ++i) out[i] = scratch_[i].real() * u[i];
  forward_dft(spec_, out, out);
  for (std::size_t i = 0; i < n; ++i) out[i] *= mask_[i];
}

Field DiscreteNonlinearity::apply(const Field& u) const {
  if (!(u.spec() == spec_)) throw Error(ErrorKind::grid_mismatch, "nonlinearity built for a different grid");
  const Field p = u.to_physical();
  Field out(spec_, Representation::frequency);
  apply(p.values(), out.values());
  return out;
}

bool DiscreteNonlinearity::within_band(const Field& f) const {
  if (!dealias_) return true;
  const Field h = f.to_frequency();
  const double peak = h.max_modulus();
  for (std::size_t i = 0; i < h.size(); ++i)
    if (mask_[i] == 0.0 && std::abs(h[i]) > 1e-12 * peak) return false;
  return true;
}

Trajectory evolve(const Field& f, const Field& g, const HartreeKernel& kernel, const EvolveOptions& options) {
  return evolve(to_first_order(f, g), kernel, options);
}

Trajectory evolve(const FirstOrderState& initial, const HartreeKernel& kernel, const EvolveOptions& options) {
  if (!(options.T >= 0.0) || !std::isfinite(options.T)) throw Error(ErrorKind::invalid_parameter, "T must be finite and >= 0");
  if (!(options.dt > 0.0)) throw Error(ErrorKind::invalid_parameter, "dt must be positive");
  if (options.sample_stride == 0) throw Error(ErrorKind::invalid_parameter, "sample stride must be positive");

  const auto& spec = initial.v.spec();
  const DiscreteNonlinearity nl(spec, kernel, options.dealias);
  if (!nl.within_band(initial.v))
    throw Error(ErrorKind::precondition_violation, "initial data has content above n/3; dealiased evolution needs band-limited data");

  const std::size_t steps = options.T == 0.0 ? 0 : static_cast<std::size_t>(std::ceil(options.T / options.dt - 1e-9));
  const double h = steps == 0 ? 0.0 : options.T / static_cast<double>(steps);
  const std::size_t n = spec.size();

  const auto w = bracket_table(spec);
  std::vector<Complex> e_full(n), e_half(n);
  std::vector<double> inv_w(n);
  for (std::size_t i = 0; i < n; ++i) {
    e_full[i] = std::polar(1.0, -h * w[i]);
    e_half[i] = std::polar(1.0, -0.5 * h * w[i]);
    inv_w[i] = 1.0 / w[i];
  }

  std::vector<Complex> phys(n);
  // F(v̂) = -i B^{-1} P N(Re v), written into out.
  auto rhs = [&](std::span<const Complex> vhat, std::span<Complex> out) {
    inverse_dft(spec, vhat, phys);
    for (auto& z : phys) z = {z.real(), 0.0};
    nl.apply(phys, out);
    for (std::size_t i = 0; i < n; ++i) out[i] *= Complex(0.0, -inv_w[i]);
  };

  FirstOrderState state{initial.v.to_frequency(), initial.t};
  Trajectory traj;
  auto sample = [&]() {
    traj.times.push_back(state.t);
    DiagnosticRecord rec;
    rec.t = state.t;
    rec.conserved = diagnostics(state, kernel);
    rec.I = rec.conserved.hamiltonian;
    rec.vtilde_h1 = sobolev_norm(state.v, 1.0);
    rec.witness = rec.vtilde_h1;
    traj.diagnostics.push_back(rec);
    if (options.keep_states) traj.states.push_back(state);
    if (options.on_sample) options.on_sample(state);
  };
  sample();

  std::vector<Complex> k1(n), ka(n), kb(n), kc(n), tmp(n);
  auto v = state.v.values();
  for (std::size_t step = 1; step <= steps; ++step) {
    rhs(v, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = e_half[i] * (v[i] + 0.5 * h * k1[i]);
    rhs(tmp, ka);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = e_half[i] * v[i] + 0.5 * h * ka[i];
    rhs(tmp, kb);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = e_full[i] * v[i] + h * e_half[i] * kb[i];
    rhs(tmp, kc);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = e_full[i] * v[i] + (h / 6.0) * (e_full[i] * k1[i] + 2.0 * e_half[i] * (ka[i] + kb[i]) + kc[i]);
    const double last = state.t;
    state.t = initial.t + h * static_cast<double>(step);
    if (!all_finite(v))
      throw Instability("non-finite values after step " + std::to_string(step), last);
    if (step % options.sample_stride == 0 || step == steps) sample();
  }
  return traj;
}

SampledPath free_path(const Field& f, const Field& g, double T, std::size_t intervals) {
  require_same_grid(f, g);
  if (intervals == 0) throw Error(ErrorKind::invalid_parameter, "need at least one time interval");
  SampledPath path;
  path.dt = T / static_cast<double>(intervals);
  const PairState data{f.to_frequency(), g.to_frequency()};
  for (std::size_t i = 0; i <= intervals; ++i) {
    PairState s = kg_matrix(data, path.dt * static_cast<double>(i));
    path.position.push_back(std::move(s.position));
    path.velocity.push_back(std::move(s.velocity));
  }
  return path;
}

SampledPath duhamel_map(const SampledPath& candidate, const Field& f, const Field& g,
                        const DiscreteNonlinearity& nonlinearity) {
  require_same_grid(f, g);
  if (candidate.position.empty()) throw Error(ErrorKind::invalid_parameter, "empty candidate path");
  const auto& spec = f.spec();
  const std::size_t m = candidate.position.size() - 1;
  const std::size_t n = spec.size();
  const double dt = candidate.dt;
  const double T = dt * static_cast<double>(m);

  std::vector<Field> nhat;
  nhat.reserve(m + 1);
  for (const auto& u : candidate.position) {
    if (!(u.spec() == spec)) throw Error(ErrorKind::grid_mismatch, "candidate path on a different grid");
    nhat.push_back(nonlinearity.apply(u));
  }

  // sin(jΔt⟨ξ⟩)/⟨ξ⟩ and cos(jΔt⟨ξ⟩) for every lag j.
  const auto w = bracket_table(spec);
  std::vector<double> sine((m + 1) * n), cosine((m + 1) * n);
  for (std::size_t j = 0; j <= m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const double a = static_cast<double>(j) * dt * w[i];
      sine[j * n + i] = std::sin(a) / w[i];
      cosine[j * n + i] = std::cos(a);
    }

  SampledPath out = free_path(f, g, T, m);
  for (std::size_t i = 1; i <= m; ++i) {
    auto u = out.position[i].values();
    auto ut = out.velocity[i].values();
    for (std::size_t j = 0; j <= i; ++j) {
      const double weight = (j == 0 || j == i) ? 0.5 * dt : dt;
      const std::size_t lag = i - j;
      const auto nj = nhat[j].values();
      const double* s = &sine[lag * n];
      const double* c = &cosine[lag * n];
      for (std::size_t k = 0; k < n; ++k) {
        u[k] -= weight * s[k] * nj[k];
        ut[k] -= weight * c[k] * nj[k];
      }
    }
  }
  for (std::size_t i = 0; i <= m; ++i) {
    out.position[i] = out.position[i].to_physical().real_part();
    out.velocity[i] = out.velocity[i].to_physical().real_part();
  }
  return out;
}

double contraction_window(const Field& f, const Field& g) {
  const double size = energy_norm_sq(PairState{f, g});
  if (size == 0.0) return 1.0;
  return std::min(1.0, 1.0 / (8.0 * size));
}

PicardResult picard_solve(const Field& f, const Field& g, const HartreeKernel& kernel, const PicardOptions& options) {
  require_same_grid(f, g);
  if (!(options.T > 0.0) || options.T > 1.0) throw Error(ErrorKind::precondition_violation, "Picard horizon must lie in (0, 1]");
  if (!(options.tol > 0.0)) throw Error(ErrorKind::invalid_parameter, "tolerance must be positive");
  if (options.max_iter < 1) throw Error(ErrorKind::invalid_parameter, "max_iter must be positive");
  if (!f.is_real() || !g.is_real()) throw Error(ErrorKind::precondition_violation, "Picard data must be real");

  const DiscreteNonlinearity nl(f.spec(), kernel, options.dealias);
  PicardResult result;
  SampledPath current = free_path(f, g, options.T, options.intervals);
  for (auto& u : current.position) u = u.to_physical().real_part();
  for (auto& u : current.velocity) u = u.to_physical().real_part();

  int above_one = 0;
  for (int iter = 1;; ++iter) {
    SampledPath next = duhamel_map(current, f, g, nl);
    double dist = 0.0;
    for (std::size_t i = 0; i < next.position.size(); ++i)
      dist = std::max(dist, lebesgue_norm(next.position[i] - current.position[i], 2.0));
    auto& rec = result.record;
    if (!rec.distances.empty()) {
      const double prev = rec.distances.back();
      const double ratio = prev > 0.0 ? dist / prev : 0.0;
      rec.ratios.push_back(ratio);
      above_one = ratio > 1.0 ? above_one + 1 : 0;
    }
    rec.distances.push_back(dist);
    rec.iterations = iter;
    rec.residual = dist;
    current = std::move(next);
    if (!std::isfinite(dist)) throw NonConvergence("Picard iterates became non-finite", dist);
    if (dist <= options.tol) break;
    if (above_one >= 3)
      throw Error(ErrorKind::no_contraction, "three consecutive Picard ratios above 1; shrink T or the data");
    if (iter >= options.max_iter)
      throw NonConvergence("Picard iteration did not reach tolerance in " + std::to_string(iter) + " steps", dist);
  }

  for (std::size_t i = 0; i < current.position.size(); ++i) {
    FirstOrderState s = to_first_order(current.position[i], current.velocity[i], current.dt * static_cast<double>(i));
    DiagnosticRecord d;
    d.t = s.t;
    d.conserved = diagnostics(PairState{current.position[i], current.velocity[i]}, kernel);
    d.I = d.conserved.hamiltonian;
    d.vtilde_h1 = sobolev_norm(s.v, 1.0);
    d.witness = d.vtilde_h1;
    result.trajectory.times.push_back(s.t);
    result.trajectory.diagnostics.push_back(d);
    result.trajectory.states.push_back(std::move(s));
  }
  result.path = std::move(current);
  return result;
}

std::vector<double> strichartz_ratios(const Field& f, const Field& g, const HartreeKernel& kernel,
                                      std::span<const StrichartzPair> pairs, double T, double dt) {
  EvolveOptions opts;
  opts.T = T;
  opts.dt = dt;
  const Trajectory tr = evolve(f, g, kernel, opts);
  std::vector<Field> u, forcing;
  u.reserve(tr.states.size());
  forcing.reserve(tr.states.size());
  for (const auto& s : tr.states) {
    u.push_back(from_first_order(s).position);
    forcing.push_back(hartree_nonlinearity(u.back(), kernel));
  }
  const double step = tr.times.size() > 1 ? tr.times[1] - tr.times[0] : T;
  const double data = sobolev_norm(f, 1.0) + sobolev_norm(g, 0.0) + spacetime_norm(forcing, step, 1.0, 2.0);
  if (data == 0.0) throw Error(ErrorKind::precondition_violation, "Strichartz ratio of zero data");
  std::vector<double> out;
  for (const auto& pr : pairs) out.push_back(spacetime_norm(u, step, pr.q, pr.r) / data);
  return out;
}

}  // namespace kgh
