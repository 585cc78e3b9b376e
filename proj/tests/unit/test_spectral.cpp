#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kgh/error.hpp"
#include "kgh/fourier.hpp"
#include "kgh/norms.hpp"
#include "kgh/rational.hpp"
#include "support.hpp"

using namespace kgh;
using kgh::testing::brute_force_dft;
using kgh::testing::random_field;
constexpr double pi = std::numbers::pi;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridSpec(0, 16, 1.0), Error);
  CHECK_THROWS_AS(GridSpec(4, 16, 1.0), Error);
  CHECK_THROWS_AS(GridSpec(1, 6, 1.0), Error);
  CHECK_THROWS_AS(GridSpec(1, 15, 1.0), Error);
  CHECK_THROWS_AS(GridSpec(1, 16, 0.0), Error);
  const auto g = GridSpec::with_box_density(2, 16, 4);
  CHECK(g.period() == doctest::Approx(8 * pi));
  CHECK(g.frequency_step() == doctest::Approx(0.25));
  CHECK(g.size() == 256);
}

TEST_CASE("lattice ordering") {
  const GridSpec g(2, 8, 2 * pi);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.flatten(g.unflatten(i)) == i);
  CHECK(g.lattice(g.flatten({7, 4, 0})) == std::array<int, 3>{-1, -4, 0});
  CHECK(g.frequency(g.flatten({3, 5, 0}))[1] == doctest::Approx(-3.0));
}

TEST_CASE("transform matches direct summation") {
  for (int d = 1; d <= 3; ++d) {
    const GridSpec g(d, 8, 3.0 + d);
    const Field f = random_field(g, 11 + d);
    const Field hat = transform(f, Direction::forward);
    const auto oracle = brute_force_dft(f);
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      err = std::max(err, std::abs(hat[k] - oracle[k]));
      scale = std::max(scale, std::abs(oracle[k]));
    }
    CHECK(err <= 1e-12 * scale);
  }
}

TEST_CASE("transform contract") {
  const GridSpec g(1, 32, 2 * pi);
  Field zero(g);
  CHECK(transform(zero, Direction::forward).max_modulus() == 0.0);
  CHECK_THROWS_AS(transform(zero, Direction::inverse), Error);

  const Complex c(1.5, -0.5);
  Field constant(g);
  for (auto& v : constant.values()) v = c;
  const Field hat = constant.to_frequency();
  CHECK(std::abs(hat[0] - 2 * pi * c) < 1e-12);
  for (std::size_t k = 1; k < g.size(); ++k) CHECK(std::abs(hat[k]) < 1e-12);

  for (int d = 1; d <= 3; ++d) {
    const GridSpec gd(d, 16, 5.0);
    const Field f = random_field(gd, 3);
    CHECK(relative_l2_difference(f.to_frequency().to_physical(), f) <= 1e-12);
  }
}

TEST_CASE("norms") {
  const GridSpec g(1, 32, 2 * pi);
  Field zero(g);
  CHECK(norm(zero, NormSpec::lebesgue(3)) == 0.0);
  CHECK(norm(zero, NormSpec::sobolev(-1)) == 0.0);
  CHECK_THROWS_AS(lebesgue_norm(zero, 0.5), Error);

  Field c = Field::from_function(g, [](const Vec3&) { return Complex(2.0, 0.0); });
  CHECK(lebesgue_norm(c, 2) == doctest::Approx(2.0 * std::sqrt(2 * pi)).epsilon(1e-14));
  CHECK(lebesgue_norm(c, infinity) == doctest::Approx(2.0));

  const Field wave = Field::from_function(g, [](const Vec3& x) { return std::polar(1.0, 3 * x[0]); });
  CHECK(sobolev_norm(wave, 1) == doctest::Approx(std::sqrt(10.0) * std::sqrt(2 * pi)).epsilon(1e-13));
  CHECK(sobolev_norm(wave.to_frequency(), 1) == doctest::Approx(std::sqrt(10.0 * 2 * pi)).epsilon(1e-13));
}

TEST_CASE("Parseval on random fields") {
  for (int d = 1; d <= 3; ++d) {
    const GridSpec g(d, 16, 2.5 * d);
    for (int s = 0; s < 5; ++s) {
      const Field f = random_field(g, 100 + s);
      const double a = sobolev_norm(f, 0), b = lebesgue_norm(f, 2);
      CHECK(std::abs(a - b) <= 1e-12 * b);
    }
  }
}

TEST_CASE("multipliers") {
  const GridSpec g(1, 32, 2 * pi);
  const Field f = random_field(g, 5);
  CHECK(relative_l2_difference(apply_multiplier(f, [](const Frequency&) { return Complex(1.0); }), f) <= 1e-12);
  CHECK(apply_multiplier(f, [](const Frequency&) { return Complex(0.0); }).max_modulus() == 0.0);

  const Field wave = Field::from_function(g, [](const Vec3& x) { return std::polar(1.0, 2 * x[0]); });
  const Field scaled = apply_multiplier(wave, [](const Frequency& xi) { return Complex(japanese_bracket(xi)); });
  CHECK(relative_l2_difference(scaled, wave * Complex(std::sqrt(5.0))) <= 1e-12);

  const Symbol m1 = [](const Frequency& xi) { return Complex(std::cos(xi[0]), xi[0]); };
  const Symbol m2 = [](const Frequency& xi) { return Complex(1.0 / (1.0 + xi[0] * xi[0]), 0.3); };
  const Field twice = apply_multiplier(apply_multiplier(f, m1), m2);
  const Field once = apply_multiplier(f, [&](const Frequency& xi) { return m1(xi) * m2(xi); });
  CHECK(relative_l2_difference(twice, once) <= 1e-12);

  try {
    apply_multiplier(f, [](const Frequency& xi) { return Complex(1.0 / xi[0]); });
    FAIL("expected singular symbol");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular_symbol);
    CHECK(std::string(e.what()).find("0") != std::string::npos);
  }
}

TEST_CASE("Bessel potentials") {
  const GridSpec g(3, 16, 7.0);
  const Field f = random_field(g, 9);
  CHECK(relative_l2_difference(bessel_power(f, 0), f) <= 1e-12);
  CHECK(relative_l2_difference(bessel_power(bessel_power(f, 1), -1), f) <= 1e-12);
  Field c = Field::from_function(g, [](const Vec3&) { return Complex(0.7, 0.1); });
  CHECK(relative_l2_difference(bessel_power(c, 2.5), c) <= 1e-12);
  CHECK(sobolev_norm(bessel_power(f, 1), 0) == doctest::Approx(sobolev_norm(f, 1)).epsilon(1e-12));
}

TEST_CASE("rationals") {
  CHECK(parse_rational("2.2") == Rational(11, 5));
  CHECK(parse_rational("5/2") == Rational(5, 2));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK(format_rational(Rational(9, 55)) == "9/55");
  CHECK(format_rational(Rational(4)) == "4");
  const auto inf = ExtRational::infinity();
  CHECK(inf.reciprocal() == Rational(0));
  CHECK(format_rational(inf) == "inf");
  CHECK_THROWS_AS(inf.value(), Error);
  CHECK(ExtRational(Rational(3, 2)).reciprocal() == Rational(2, 3));
}
