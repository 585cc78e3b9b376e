#include "kgh/norms.hpp"

#include <cmath>

#include "kgh/error.hpp"

namespace kgh {

double lebesgue_norm(const Field& field, double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::invalid_parameter, "Lebesgue exponent must be >= 1");
  const Field phys = field.to_physical();
  if (std::isinf(p)) return phys.max_modulus();
  double sum = 0.0;
  if (p == 2.0) {
    for (const auto& v : phys.values()) sum += std::norm(v);
  } else {
    for (const auto& v : phys.values()) sum += std::pow(std::abs(v), p);
  }
  return std::pow(field.spec().cell_volume() * sum, 1.0 / p);
}

double sobolev_norm(const Field& field, double s) {
  const Field hat = field.to_frequency();
  const auto& spec = field.spec();
  double sum = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double w = s == 0.0 ? 1.0 : std::pow(1.0 + spec.frequency_norm_sq(i), s);
    sum += w * std::norm(hat[i]);
  }
  return std::sqrt(sum / spec.volume());
}

double norm(const Field& field, const NormSpec& spec) {
  switch (spec.kind) {
    case NormSpec::Kind::lebesgue: return lebesgue_norm(field, spec.exponent);
    case NormSpec::Kind::sobolev: return sobolev_norm(field, spec.exponent);
  }
  return 0.0;
}

}  // namespace kgh
