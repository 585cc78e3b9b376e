#include "kgh/exponents.hpp"

#include "kgh/error.hpp"

namespace kgh {

Rational conjugate_exponent(const Rational& p) {
  if (p <= 1) throw Error(ErrorKind::invalid_parameter, "conjugate exponent needs p > 1, got " + format_rational(p));
  return p / (p - 1);
}

ExponentTable exponent_table(const Rational& gamma, const Rational& p) {
  if (gamma <= 0 || gamma >= 3)
    throw Error(ErrorKind::invalid_parameter, "gamma must lie in (0,3), got " + format_rational(gamma));
  ExponentTable t;
  t.gamma = gamma;
  t.p = p;
  t.p_gamma = Rational(18) / (Rational(9) - 2 * gamma);
  t.p_gamma_conjugate = conjugate_exponent(t.p_gamma);
  t.gwp_bound = Rational(54) / (Rational(27) - 2 * gamma);
  if (p < 2 || p > t.p_gamma)
    throw Error(ErrorKind::invalid_parameter, "p = " + format_rational(p) + " outside [2, " + format_rational(t.p_gamma) +
                                                  "]: theta would leave [0,1]");

  const Rational half(1, 2);
  t.theta = (half - Rational(1) / p) / (half - Rational(1) / t.p_gamma);
  if (t.theta < 1) {
    const Rational ratio = t.theta / (Rational(1) - t.theta);
    t.split_exp = ratio;
    t.energy_exp = 4 * ratio;
    t.window_exp = Rational(1) - 2 * ratio;
  }
  if (3 * t.theta < 1) t.growth_exp = 2 * t.theta / (Rational(1) - 3 * t.theta);
  return t;
}

std::vector<ExponentTable::Entry> ExponentTable::entries() const {
  return {
      {"gamma", gamma},
      {"p", p},
      {"p_gamma", p_gamma},
      {"p_gamma_conjugate", p_gamma_conjugate},
      {"gwp_bound", gwp_bound},
      {"theta", theta},
      {"split_exp", split_exp},
      {"energy_exp", energy_exp},
      {"growth_exp", growth_exp},
      {"window_exp", window_exp},
  };
}

}  // namespace kgh
