#pragma once

// Adaptive quadrature oracles for the Hartree potential, independent of the
// spectral code path.

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <functional>
#include <stdexcept>
#include <string>

#include "support.hpp"

namespace kgh::testing {

class Quadrature {
 public:
  Quadrature() : ws_(gsl_integration_workspace_alloc(2000)) { gsl_set_error_handler_off(); }
  ~Quadrature() { gsl_integration_workspace_free(ws_); }

  double finite(const std::function<double(double)>& f, double a, double b) {
    double result = 0, err = 0;
    gsl_function F{&thunk, const_cast<std::function<double(double)>*>(&f)};
    check(gsl_integration_qags(&F, a, b, 0.0, 1e-10, 2000, ws_, &result, &err));
    return result;
  }

  double upper(const std::function<double(double)>& f, double a) {
    double result = 0, err = 0;
    gsl_function F{&thunk, const_cast<std::function<double(double)>*>(&f)};
    check(gsl_integration_qagiu(&F, a, 0.0, 1e-10, 2000, ws_, &result, &err));
    return result;
  }

 private:
  static void check(int status) {
    if (status != GSL_SUCCESS) throw std::runtime_error(std::string("GSL quadrature failed: ") + gsl_strerror(status));
  }
  static double thunk(double x, void* p) { return (*static_cast<std::function<double(double)>*>(p))(x); }
  gsl_integration_workspace* ws_;
};

// ∫_0^L V_per(x - y) ρ(y) dy, split at the kernel singularity y = x.
double periodic_convolution(Quadrature& quad, double gamma, double L, double x, const std::function<double(double)>& rho) {
  auto integrand = [&](double y) { return periodized_riesz(gamma, L, x - y) * rho(y); };
  // Each piece carries at most one endpoint singularity.
  double sum = 0.0;
  for (auto [a, b] : {std::pair{0.0, x}, std::pair{x, L}}) {
    if (b <= a) continue;
    const double mid = 0.5 * (a + b);
    sum += quad.finite(integrand, a, mid) + quad.finite(integrand, mid, b);
  }
  return sum;
}

// Energy ¼ Σ_j ρ(x_j) φ(x_j) h with φ from periodic_convolution (d = 1).
inline double riemann_energy(Quadrature& quad, double gamma, double L, int n, const std::function<double(double)>& rho) {
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double x = L * j / n;
    sum += rho(x) * periodic_convolution(quad, gamma, L, x, rho);
  }
  return 0.25 * sum * L / n;
}

}  // namespace kgh::testing
