#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace kgh {

// Compare only against other Rationals: under C++20 rewritten comparisons,
// boost 1.74's rational == int recurses without end.
using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& r) noexcept;

// "a/b", an integer, or a finite decimal such as "2.2" (read exactly as 11/5).
Rational parse_rational(std::string_view text);

// "a/b", or "a" when the denominator is 1.
std::string format_rational(const Rational& r);

// A rational or +∞; exponent calculators treat q = ∞ as a first-class value.
class ExtRational {
 public:
  ExtRational(Rational value) : value_(value), infinite_(false) {}  // NOLINT: implicit by intent
  static ExtRational infinity() { return ExtRational(); }

  bool is_infinite() const noexcept { return infinite_; }
  const Rational& value() const;  // throws for ∞
  double to_double() const noexcept;
  // 1/x with 1/∞ = 0.
  Rational reciprocal() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  ExtRational() : value_(0), infinite_(true) {}
  Rational value_;
  bool infinite_;
};

std::string format_rational(const ExtRational& r);

}  // namespace kgh
