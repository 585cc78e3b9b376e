#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "kgh/corpus.hpp"
#include "kgh/error.hpp"
#include "kgh/hartree.hpp"
#include "kgh/modulation.hpp"
#include "kgh/norms.hpp"
#include "kgh/propagators.hpp"
#include "kgh/solver.hpp"

namespace kgh::cli {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

std::vector<Field> corpus(const GridSpec& g, int count, std::uint64_t seed, double amplitude = 1.0) {
  CorpusSpec spec;
  spec.seed = seed;
  spec.count = count;
  spec.amplitude = amplitude;
  return generate_corpus(spec, g);
}

// Same Fourier coefficients on a grid with twice the points per axis.
Field refine(const Field& f) {
  const GridSpec& src = f.spec();
  const GridSpec dst(src.dimension(), 2 * src.points(), src.period());
  const Field hat = f.to_frequency();
  Field out(dst, Representation::frequency);
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto k = src.lattice(i);
    bool nyquist = false;
    std::array<int, 3> idx{0, 0, 0};
    for (int a = 0; a < src.dimension(); ++a) {
      nyquist = nyquist || 2 * std::abs(k[a]) == src.points();
      idx[a] = dst.storage_index(k[a]);
    }
    if (!nyquist) out[dst.flatten(idx)] = hat[i];
  }
  return out.to_physical();
}

double pair_distance(const PairState& a, const PairState& b) {
  return std::sqrt(energy_norm_sq({a.position - b.position, a.velocity - b.velocity}) / energy_norm_sq(b));
}

double kernel_gamma(int d) { return d == 3 ? 2.5 : 0.5 * d; }

CheckOutcome isometry(const GridSpec& g, std::uint64_t seed, const OutputHeader& header) {
  CheckOutcome out{false, "", CsvTable(header, {"index", "t", "deviation"})};
  const auto fields = corpus(g, 200, seed);
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> times(-20.0, 20.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PairState s{fields[2 * i], fields[2 * i + 1]};
    const double t = times(eng);
    const double e0 = energy_norm_sq(s);
    const double dev = std::abs(energy_norm_sq(kg_matrix(s, t)) - e0) / e0;
    worst = std::max(worst, dev);
    out.table.add_row({double(i), t, dev});
  }
  out.pass = worst <= 1e-10;
  out.detail = fmt("max relative deviation %.3e (tol 1e-10)", worst);
  return out;
}

CheckOutcome grouplaw(const GridSpec& g, std::uint64_t seed, const OutputHeader& header) {
  CheckOutcome out{false, "", CsvTable(header, {"index", "t1", "t2", "group", "reverse"})};
  const auto fields = corpus(g, 200, seed);
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> times(-20.0, 20.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PairState s{fields[2 * i], fields[2 * i + 1]};
    const double t1 = times(eng), t2 = times(eng);
    const PairState once = kg_matrix(s, t1);
    const double group = pair_distance(kg_matrix(once, t2), kg_matrix(s, t1 + t2));
    const double reverse = pair_distance(kg_matrix(once, -t1), s);
    worst = std::max({worst, group, reverse});
    out.table.add_row({double(i), t1, t2, group, reverse});
  }
  out.pass = worst <= 1e-10;
  out.detail = fmt("max relative deviation %.3e (tol 1e-10)", worst);
  return out;
}

CheckOutcome partition(const GridSpec& g, const OutputHeader& header) {
  CheckOutcome out{false, "", CsvTable(header, {"modes", "max_deviation"})};
  const auto sums = standard_partition(g)->weight_sums();
  double worst = 0.0;
  for (double s : sums) worst = std::max(worst, std::abs(s - 1.0));
  out.table.add_row({double(sums.size()), worst});
  out.pass = worst <= 1e-12;
  out.detail = fmt("max deviation %.3e over all lattice modes (tol 1e-12)", worst);
  return out;
}

CheckOutcome reconstruction(const GridSpec& g, std::uint64_t seed, const OutputHeader& header) {
  CheckOutcome out{false, "", CsvTable(header, {"index", "relative_error"})};
  const auto weights = standard_partition(g);
  double worst = 0.0;
  const auto fields = corpus(g, 100, seed);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const double err = relative_l2_difference(reconstruct(fields[i], *weights), fields[i]);
    worst = std::max(worst, err);
    out.table.add_row({double(i), err});
  }
  out.pass = worst <= 1e-10;
  out.detail = fmt("max relative error %.3e (tol 1e-10)", worst);
  return out;
}

// Bounded ratios must not grow by more than 5% when n doubles.
CheckOutcome strichartz(const GridSpec& g, std::uint64_t seed, const OutputHeader& header) {
  CheckOutcome out{false, "", CsvTable(header, {"run", "q", "r", "ratio", "refined_ratio"})};
  const StrichartzPair pairs[] = {{infinity, 2}, {4, 4}, {infinity, 6}};
  const auto kernel = HartreeKernel::riesz(kernel_gamma(g.dimension()), g.dimension());
  const auto fs = corpus(g, 10, seed, 0.5), gs = corpus(g, 10, seed + 1, 0.5);
  std::vector<double> base(3, 0.0), fine(3, 0.0);
  bool finite = true;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto a = strichartz_ratios(fs[i], gs[i], kernel, pairs, 1.0, 0.02);
    const auto b = strichartz_ratios(refine(fs[i]), refine(gs[i]), kernel, pairs, 1.0, 0.02);
    for (std::size_t j = 0; j < 3; ++j) {
      finite = finite && std::isfinite(a[j]) && std::isfinite(b[j]);
      base[j] = std::max(base[j], a[j]);
      fine[j] = std::max(fine[j], b[j]);
      out.table.add_row({double(i), pairs[j].q, pairs[j].r, a[j], b[j]});
    }
  }
  double growth = 0.0;
  for (std::size_t j = 0; j < 3; ++j) growth = std::max(growth, fine[j] / base[j] - 1.0);
  out.pass = finite && growth <= 0.05;
  out.detail = fmt("max ratios (inf,2) %.4f", base[0]) + fmt(" (4,4) %.4f", base[1]) + fmt(" (inf,6) %.4f", base[2]) +
               fmt("; growth under n-doubling %+.2f%% (tol 5%%)", 100 * growth);
  return out;
}

CheckOutcome uniformbound(const GridSpec& g, std::uint64_t seed, const OutputHeader& header) {
  CheckOutcome out{false, "", CsvTable(header, {"index", "ratio", "refined_ratio"})};
  const ModulationParams params{4, 4.0 / 3, 0};
  double base = 0.0, fine = 0.0;
  bool finite = true;
  const auto fields = corpus(g, 10, seed);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const double a = propagator_bound_probe(fields[i], params, 5.0, ProbeMode::uniform, 0.0, 11).sup_ratio;
    const double b = propagator_bound_probe(refine(fields[i]), params, 5.0, ProbeMode::uniform, 0.0, 11).sup_ratio;
    finite = finite && std::isfinite(a) && std::isfinite(b);
    base = std::max(base, a);
    fine = std::max(fine, b);
    out.table.add_row({double(i), a, b});
  }
  out.pass = finite && fine <= 1.05 * base;
  out.detail = fmt("max ratio %.4f, refined %.4f (growth tol 5%%)", base, fine);
  return out;
}

CheckOutcome decay(const GridSpec& g, const OutputHeader& header) {
  CheckOutcome out{false, "", CsvTable(header, {"theta", "t_max", "fitted", "predicted"})};
  const double c = 0.5 * g.period();
  const Field packet = Field::from_function(g, [&](const Vec3& x) {
    double r2 = 0.0;
    for (int a = 0; a < g.dimension(); ++a) r2 += (x[a] - c) * (x[a] - c);
    return Complex(std::exp(-0.5 * r2), 0.0);
  });
  const ModulationParams params{4, 4.0 / 3, 0};
  out.pass = true;
  for (auto [theta, tol] : {std::pair{0.0, 0.15}, std::pair{1.0, 0.2}}) {
    const auto r = propagator_bound_probe(packet, params, infinity, ProbeMode::decay, theta, 40);
    out.table.add_row({theta, r.t_max, r.fitted_exponent, r.predicted_exponent});
    out.pass = out.pass && std::abs(r.fitted_exponent - r.predicted_exponent) <= tol;
    out.detail += fmt("theta=%g slope %.4f ", theta, r.fitted_exponent) + fmt("(predicted %.4f) ", r.predicted_exponent);
  }
  return out;
}

}  // namespace

CheckOutcome run_check(const std::string& name, const std::optional<GridSpec>& grid, std::uint64_t seed,
                       const OutputHeader& header) {
  const GridSpec standard(1, 64, 4 * std::numbers::pi);
  const GridSpec g = grid.value_or(name == "decay" ? GridSpec(1, 1024, 256 * std::numbers::pi) : standard);
  if (name == "isometry") return isometry(g, seed, header);
  if (name == "grouplaw") return grouplaw(g, seed, header);
  if (name == "partition") return partition(g, header);
  if (name == "reconstruction") return reconstruction(g, seed, header);
  if (name == "strichartz") return strichartz(g, seed, header);
  if (name == "uniformbound") return uniformbound(g, seed, header);
  if (name == "decay") return decay(g, header);
  throw Error(ErrorKind::invalid_parameter, "unknown check '" + name + "'");
}

}  // namespace kgh::cli
