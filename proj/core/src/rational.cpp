#include "kgh/rational.hpp"

#include <charconv>
#include <limits>

#include "kgh/error.hpp"

namespace kgh {
namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end)
    throw Error(ErrorKind::invalid_parameter, "not a rational number: '" + std::string(whole) + "'");
  return value;
}

}  // namespace

double to_double(const Rational& r) noexcept {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorKind::invalid_parameter, "empty rational");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) throw Error(ErrorKind::invalid_parameter, "zero denominator in '" + std::string(whole) + "'");
    return Rational(parse_int(text.substr(0, slash), whole), den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const bool negative = text.front() == '-';
    std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.size() > 15) throw Error(ErrorKind::invalid_parameter, "too many decimals in '" + std::string(whole) + "'");
    if (negative || int_part.starts_with('+')) int_part.remove_prefix(1);
    const std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, whole);
    const std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, whole);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    if (ip > std::numeric_limits<std::int64_t>::max() / scale - 1)
      throw Error(ErrorKind::invalid_parameter, "decimal out of range: '" + std::string(whole) + "'");
    const Rational magnitude(ip * scale + fp, scale);
    return negative ? -magnitude : magnitude;
  }
  return Rational(parse_int(text, whole));
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

const Rational& ExtRational::value() const {
  if (infinite_) throw Error(ErrorKind::contract_violation, "value() of an infinite exponent");
  return value_;
}

double ExtRational::to_double() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : kgh::to_double(value_);
}

Rational ExtRational::reciprocal() const {
  if (infinite_) return Rational(0);
  if (value_ == Rational(0)) throw Error(ErrorKind::invalid_parameter, "reciprocal of zero exponent");
  return Rational(1) / value_;
}

std::string format_rational(const ExtRational& r) {
  return r.is_infinite() ? std::string("inf") : format_rational(r.value());
}

}  // namespace kgh
