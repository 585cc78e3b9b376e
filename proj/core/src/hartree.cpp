#include "kgh/hartree.hpp"

#include <cmath>
#include <numbers>

#include "kgh/error.hpp"
#include "kgh/fourier.hpp"
#include "kgh/norms.hpp"

namespace kgh {

double riesz_normalization(double gamma, int dimension) {
  const double d = dimension;
  return std::pow(std::numbers::pi, 0.5 * d) * std::pow(2.0, d - gamma) * std::tgamma(0.5 * (d - gamma)) /
         std::tgamma(0.5 * gamma);
}

HartreeKernel HartreeKernel::riesz(double gamma, int dimension, double zero_mode) {
  HartreeKernel k;
  k.gamma = gamma;
  k.dimension = dimension;
  k.zero_mode = zero_mode;
  if (!(gamma > 0.0 && gamma < 3.0))
    throw Error(ErrorKind::invalid_kernel, "gamma must lie in (0,3), got " + std::to_string(gamma));
  if (!(gamma < dimension))
    throw Error(ErrorKind::invalid_kernel, "gamma must be below the dimension for a positive periodized kernel");
  k.normalization = riesz_normalization(gamma, dimension);
  k.validate();
  return k;
}

void HartreeKernel::validate() const {
  if (!(gamma > 0.0 && gamma < 3.0))
    throw Error(ErrorKind::invalid_kernel, "gamma must lie in (0,3), got " + std::to_string(gamma));
  if (dimension < 1 || dimension > 3) throw Error(ErrorKind::invalid_kernel, "kernel dimension must be 1, 2 or 3");
  if (!(normalization > 0.0)) throw Error(ErrorKind::invalid_kernel, "kernel normalization must be positive");
  if (!std::isfinite(zero_mode)) throw Error(ErrorKind::invalid_kernel, "zero mode must be finite");
}

double HartreeKernel::symbol(double xi_norm) const {
  if (xi_norm == 0.0) return zero_mode;
  return normalization * std::pow(xi_norm, gamma - dimension);
}

std::vector<double> HartreeKernel::table(const GridSpec& spec) const {
  validate();
  if (spec.dimension() != dimension) throw Error(ErrorKind::grid_mismatch, "kernel dimension differs from grid dimension");
  std::vector<double> t(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) t[i] = symbol(std::sqrt(spec.frequency_norm_sq(i)));
  return t;
}

namespace {

Field density(const Field& u) {
  Field rho = u.to_physical();
  for (auto& v : rho.values()) v = {std::norm(v), 0.0};
  return rho;
}

Field convolve_real(const Field& rho, const std::vector<double>& table) {
  Field hat = rho.to_frequency();
  auto v = hat.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= table[i];
  Field out = hat.to_physical();
  for (auto& x : out.values()) x = {x.real(), 0.0};
  return out;
}

Field pointwise_product(const Field& a, const Field& b) {
  Field out = a.to_physical();
  const Field pb = b.to_physical();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= pb[i];
  return out;
}

}  // namespace

Field hartree_potential(const Field& u, const HartreeKernel& kernel) {
  return convolve_real(density(u), kernel.table(u.spec()));
}

Field hartree_nonlinearity(const Field& u, const HartreeKernel& kernel) {
  return pointwise_product(hartree_potential(u, kernel), u);
}

Field nonlinearity_difference(const Field& u1, const Field& u2, const HartreeKernel& kernel) {
  if (!(u1.spec() == u2.spec())) throw Error(ErrorKind::grid_mismatch, "difference of fields on different grids");
  const auto table = kernel.table(u1.spec());
  const Field p1 = u1.to_physical();
  const Field p2 = u2.to_physical();
  const Field first = pointwise_product(convolve_real(density(p1), table), p1 - p2);
  const Field second = pointwise_product(convolve_real(density(p1) - density(p2), table), p2);
  return first + second;
}

double hartree_energy(const Field& u, const HartreeKernel& kernel) {
  const auto table = kernel.table(u.spec());
  const Field rho = density(u).to_frequency();
  double sum = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) sum += table[i] * std::norm(rho[i]);
  return 0.25 * sum / u.spec().volume();
}

HlsExponents hls_exponents(const Rational& gamma) {
  if (gamma <= 2 || gamma >= 3)
    throw Error(ErrorKind::precondition_violation, "HLS exponent choice needs gamma in (2,3), got " + format_rational(gamma));
  HlsExponents e{Rational(3, 2), Rational(3), Rational(0)};
  e.r1 = Rational(1) / (Rational(1, 3) + Rational(1) - gamma / 3);
  const bool ok = Rational(1) / e.p1 + Rational(1) / e.q1 == Rational(1) &&
                  Rational(1) / e.r1 + gamma / 3 - 1 == Rational(1) / e.q1 && e.r1 < e.q1 && e.r1 > 1 &&
                  e.r1 <= 3 && e.p1 > 1 && e.p1 <= 3;
  if (!ok) throw Error(ErrorKind::no_valid_choice, "no admissible (p1, q1, r1) for gamma = " + format_rational(gamma));
  return e;
}

double hls_ratio(const Field& f, const Rational& p, const Rational& gamma) {
  const int d = f.spec().dimension();
  const Rational inv_q = Rational(1) / p + gamma / d - 1;
  if (!(p > 1) || inv_q <= 0 || inv_q >= Rational(1) / p)
    throw Error(ErrorKind::exponent_incompatible, "1/q = " + format_rational(inv_q) + " from p = " + format_rational(p) +
                                                      ", gamma = " + format_rational(gamma) + " violates 1 < p < q < inf");
  const double denom = lebesgue_norm(f, to_double(p));
  if (!(denom > 0.0)) throw Error(ErrorKind::precondition_violation, "HLS ratio undefined for the zero field");
  const auto kernel = HartreeKernel::riesz(to_double(gamma), d);
  Field modulus = f.to_physical();
  for (auto& v : modulus.values()) v = {std::abs(v), 0.0};
  const Field conv = convolve_real(modulus, kernel.table(f.spec()));
  return lebesgue_norm(conv, 1.0 / to_double(inv_q)) / denom;
}

}  // namespace kgh
