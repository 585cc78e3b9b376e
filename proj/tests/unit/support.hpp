#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "kgh/grid.hpp"

namespace kgh::testing {

// Direct O(N²) evaluation of f̂(ξ_k) = (L/n)^d Σ_j f(x_j) e^{-iξ_k·x_j}.
inline std::vector<Complex> brute_force_dft(const Field& f) {
  const auto& spec = f.spec();
  std::vector<Complex> out(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const auto xi = spec.frequency(k);
    Complex sum = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
      const auto x = spec.position(j);
      const double phase = xi[0] * x[0] + xi[1] * x[1] + xi[2] * x[2];
      sum += f[j] * std::polar(1.0, -phase);
    }
    out[k] = sum * spec.cell_volume();
  }
  return out;
}

// i.i.d. standard normal samples in physical space.
inline Field random_field(const GridSpec& spec, std::uint64_t seed, bool real = false) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> nd;
  Field f(spec);
  for (auto& v : f.values()) v = real ? Complex(nd(eng), 0.0) : Complex(nd(eng), nd(eng));
  return f;
}

inline double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Hurwitz zeta ζ(s, a) for a > 0 and any real s ≠ 1 by Euler-Maclaurin
// summation; the tail formula is the analytic continuation for s < 1.
inline double hurwitz_zeta(double s, double a) {
  constexpr int terms = 12;
  constexpr double bernoulli[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
  double sum = 0.0;
  for (int k = 0; k < terms; ++k) sum += std::pow(a + k, -s);
  const double x = a + terms;
  sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  double rising = s;  // s(s+1)...(s+2j-2)
  double fact = 2.0;  // (2j)!
  for (int j = 1; j <= 7; ++j) {
    sum += bernoulli[j - 1] / fact * rising * std::pow(x, -s - 2 * j + 1);
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= (2 * j + 1) * (2 * j + 2);
  }
  return sum;
}

// Σ_j |x + jL|^{-γ} on the line, continued analytically for γ < 1 (mean zero).
inline double periodized_riesz(double gamma, double L, double x) {
  double a = std::fmod(x, L) / L;
  if (a < 0) a += 1.0;
  return std::pow(L, -gamma) * (hurwitz_zeta(gamma, a) + hurwitz_zeta(gamma, 1.0 - a));
}

}  // namespace kgh::testing

namespace kgh::testing {

// The same trigonometric polynomial on a grid with `points` samples per axis
// (same period). Modes that do not fit are dropped; the Nyquist mode of the
// source is dropped as well so real fields stay real.
inline Field resample(const Field& f, int points) {
  const auto& src = f.spec();
  const GridSpec dst(src.dimension(), points, src.period());
  const Field hat = f.to_frequency();
  Field out(dst, Representation::frequency);
  const int limit = std::min(src.points(), points) / 2;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto k = src.lattice(i);
    bool fits = true;
    std::array<int, 3> idx{0, 0, 0};
    for (int a = 0; a < src.dimension(); ++a) {
      fits = fits && std::abs(k[a]) < limit;
      idx[a] = dst.storage_index(k[a]);
    }
    if (fits) out[dst.flatten(idx)] = hat[i];
  }
  return f.is_physical() ? out.to_physical() : out;
}

}  // namespace kgh::testing
