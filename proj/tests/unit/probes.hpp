#pragma once

// Corpus sweeps behind the calibrated inequality constants. The calibration
// program and the test suites call the same functions on the same corpora.

#include <algorithm>
#include <limits>
#include <vector>

#include "calibration.hpp"
#include "kgh/corpus.hpp"
#include "kgh/exponents.hpp"
#include "kgh/fourier.hpp"
#include "kgh/hartree.hpp"
#include "kgh/modulation.hpp"
#include "kgh/norms.hpp"
#include "kgh/propagators.hpp"
#include "kgh/solver.hpp"
#include "support.hpp"

namespace kgh::testing {

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double x) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
};

inline std::vector<Field> calibration_corpus(const GridSpec& g, int count, std::uint64_t offset = 0,
                                             double amplitude = 1.0) {
  CorpusSpec spec;
  spec.seed = calibration::corpus_seed + offset;
  spec.count = count;
  spec.alpha = 2.2;
  spec.amplitude = amplitude;
  return generate_corpus(spec, g);
}

inline std::vector<Field> refined(const std::vector<Field>& fields) {
  std::vector<Field> out;
  for (const auto& f : fields) out.push_back(resample(f, 2 * f.spec().points()));
  return out;
}

inline Range sobolev_ratios(const std::vector<Field>& fields, double p) {
  Range r;
  for (const auto& f : fields) r.add(lebesgue_norm(f, p) / sobolev_norm(f, 1.0));
  return r;
}

inline Range m22_ratios(const std::vector<Field>& fields) {
  Range r;
  for (const auto& f : fields) r.add(modulation_norm(f, {2, 2, 0}) / lebesgue_norm(f, 2));
  return r;
}

inline Range isomorphism_ratios(const std::vector<Field>& fields, const ModulationParams& params) {
  Range r;
  const ModulationParams lowered{params.p, params.q, params.s - 1};
  for (const auto& f : fields) r.add(modulation_norm(bessel_power(f, 1.0), lowered) / modulation_norm(f, params));
  return r;
}

inline Range embedding_ratios(const std::vector<Field>& fields, double p) {
  Range r;
  const ModulationParams params{p, p / (p - 1), 0};
  for (const auto& f : fields) r.add(lebesgue_norm(f, p) / modulation_norm(f, params));
  return r;
}

inline Range stft_ratios(const std::vector<Field>& fields, const ModulationParams& params, double width) {
  Range r;
  for (const auto& f : fields) {
    const Field window = gaussian_window(f.spec(), width);
    r.add(stft_norm(f, params, window) / modulation_norm(f, params));
  }
  return r;
}

inline Range hls_ratios(const std::vector<Field>& fields) {
  Range r;
  for (const auto& f : fields) r.add(hls_ratio(f, Rational(2), Rational(5, 2)));
  return r;
}

inline constexpr StrichartzPair strichartz_pairs[] = {{infinity, 2}, {4, 4}, {infinity, 6}};

// One Range per entry of strichartz_pairs, over runs (f_i, g_i).
inline std::vector<Range> strichartz_sweep(const std::vector<Field>& f, const std::vector<Field>& g, double T,
                                           double dt) {
  std::vector<Range> out(std::size(strichartz_pairs));
  const auto kernel = HartreeKernel::riesz(2.5, 3);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto ratios = strichartz_ratios(f[i], g[i], kernel, strichartz_pairs, T, dt);
    for (std::size_t j = 0; j < out.size(); ++j) out[j].add(ratios[j]);
  }
  return out;
}

inline Range uniform_bound_ratios(const std::vector<Field>& fields, const ModulationParams& params, double T,
                                  int samples) {
  Range r;
  for (const auto& f : fields) r.add(propagator_bound_probe(f, params, T, ProbeMode::uniform, 0.0, samples).sup_ratio);
  return r;
}

}  // namespace kgh::testing
