#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kgh/error.hpp"
#include "kgh/fourier.hpp"
#include "kgh/norms.hpp"
#include "kgh/propagators.hpp"
#include "support.hpp"

using namespace kgh;
using kgh::testing::random_field;
constexpr double pi = std::numbers::pi;

namespace {

Field plane_wave(const GridSpec& g, int k) {
  return Field::from_function(g, [&](const Vec3& x) { return std::polar(1.0, k * x[0]); });
}

PairState random_state(const GridSpec& g, std::uint64_t seed) {
  return {random_field(g, seed, true), random_field(g, seed + 7919, true)};
}

double state_distance(const PairState& a, const PairState& b) {
  return std::sqrt(energy_norm_sq({a.position - b.position, a.velocity - b.velocity}) / energy_norm_sq(b));
}

}  // namespace

TEST_CASE("propagator symbols") {
  const GridSpec g(2, 16, 5.0);
  const Field f = random_field(g, 1);
  CHECK(relative_l2_difference(kg_propagator(f, 0, PropagatorKind::cosine), f) <= 1e-12);
  CHECK(kg_propagator(f, 0, PropagatorKind::sine).max_modulus() <= 1e-15);
  CHECK(relative_l2_difference(kg_propagator(f, 0, PropagatorKind::half_wave), f) <= 1e-12);

  const GridSpec g1(1, 32, 2 * pi);
  const Field c = Field::from_function(g1, [](const Vec3&) { return Complex(1.3, 0.0); });
  CHECK(relative_l2_difference(kg_propagator(c, 1, PropagatorKind::cosine), c * Complex(std::cos(1.0))) <= 1e-12);
  const Field w = plane_wave(g1, 2);
  CHECK(relative_l2_difference(kg_propagator(w, 1, PropagatorKind::half_wave), w * std::polar(1.0, -std::sqrt(5.0))) <=
        1e-12);
}

TEST_CASE("Klein-Gordon group") {
  const GridSpec g1(1, 32, 2 * pi);
  const PairState s{plane_wave(g1, 2), Field(g1)};
  const auto out = kg_matrix(s, pi / std::sqrt(5.0));
  CHECK(relative_l2_difference(out.position, s.position * Complex(-1.0)) <= 1e-12);
  CHECK(lebesgue_norm(out.velocity, 2) <= 1e-12);

  std::mt19937_64 eng(17);
  std::uniform_real_distribution<double> times(-20.0, 20.0);
  for (int d = 1; d <= 3; ++d) {
    const GridSpec g(d, d == 3 ? 8 : 16, 2 * pi * d);
    for (int i = 0; i < 10; ++i) {
      const PairState s0 = random_state(g, 40 + i);
      CHECK(state_distance(kg_matrix(s0, 0.0), s0) <= 1e-12);
      const double t1 = times(eng), t2 = times(eng);
      const double e0 = energy_norm_sq(s0);
      CHECK(std::abs(energy_norm_sq(kg_matrix(s0, t1)) - e0) <= 1e-10 * e0);
      CHECK(state_distance(kg_matrix(kg_matrix(s0, t1), t2), kg_matrix(s0, t1 + t2)) <= 1e-10);
      CHECK(state_distance(kg_matrix(kg_matrix(s0, t1), -t1), s0) <= 1e-10);
    }
  }
}

TEST_CASE("cosine trace derivative by finite differences") {
  const GridSpec g(2, 16, 4 * pi);
  const Field f = random_field(g, 3, true).to_frequency();
  const double h = 1e-4;
  for (double t : {0.3, 1.7, 5.0}) {
    const Field dcos = (kg_propagator(f, t + h, PropagatorKind::cosine) - kg_propagator(f, t - h, PropagatorKind::cosine)) *
                       Complex(0.5 / h);
    // d/dt cos(t⟨ξ⟩) = -⟨ξ⟩ sin(t⟨ξ⟩) = -⟨ξ⟩² K(t).
    const Field expected = bessel_power(kg_propagator(f, t, PropagatorKind::sine), 2.0) * Complex(-1.0);
    CHECK(relative_l2_difference(dcos, expected) <= 1e-6);
  }
}

TEST_CASE("gap condition and admissibility") {
  CHECK(gap_q(Rational(6), 3).is_infinite());
  CHECK(gap_q(Rational(4), 4).is_infinite());
  CHECK(gap_q(Rational(10), 3) == ExtRational(Rational(5)));
  try {
    gap_q(Rational(9, 2), 3);
    FAIL("expected no admissible q");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::no_admissible_q);
  }
  CHECK_THROWS_AS(gap_q(Rational(3), 3), Error);
  CHECK_THROWS_AS(gap_q(Rational(1), 3), Error);

  CHECK(AdmissiblePair{ExtRational::infinity(), Rational(2), 3}.is_admissible());
  CHECK(AdmissiblePair{ExtRational(Rational(4)), Rational(4), 3}.is_admissible());
  CHECK(AdmissiblePair{ExtRational::infinity(), Rational(6), 3}.is_admissible());
  CHECK(!AdmissiblePair{ExtRational(Rational(2)), Rational(2), 3}.is_admissible());
  CHECK(!AdmissiblePair{ExtRational(Rational(3)), Rational(1), 3}.is_admissible());
}

TEST_CASE("space-time norms") {
  const GridSpec g(1, 32, 2 * pi);
  std::vector<Field> zero(5, Field(g));
  CHECK(spacetime_norm(zero, 0.25, 3, 2) == 0.0);
  CHECK_THROWS_AS(spacetime_norm(std::span<const Field>{}, 0.1, 2, 2), Error);

  const Field c = Field::from_function(g, [](const Vec3&) { return Complex(0.8, 0.0); });
  std::vector<Field> constant(11, c);
  CHECK(spacetime_norm(constant, 0.1, 3, 2) == doctest::Approx(0.8 * std::sqrt(2 * pi)).epsilon(1e-12));

  std::vector<Field> growing;
  for (int i = 0; i < 6; ++i) growing.push_back(c * Complex(1.0 + i));
  CHECK(spacetime_norm(growing, 0.2, infinity, 4) == doctest::Approx(lebesgue_norm(growing.back(), 4)).epsilon(1e-14));
}

TEST_CASE("uniform propagator probe on a plane wave") {
  const GridSpec g(1, 32, 2 * pi);
  const ModulationParams params{4, 4.0 / 3, 0.5};
  const auto report = propagator_bound_probe(plane_wave(g, 3), params, 3.0, ProbeMode::uniform, 0.0, 13);
  REQUIRE(report.times.size() == 13);
  const double w = std::sqrt(10.0);
  double sup = 0.0;
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    const double t = report.times[i];
    const double expected = 4.0 * std::abs(std::sin(t * w)) / w + std::abs(std::cos(t * w));
    CHECK(report.values[i] == doctest::Approx(expected).epsilon(1e-11));
    sup = std::max(sup, expected);
  }
  CHECK(report.sup_ratio == doctest::Approx(sup).epsilon(1e-11));
}

TEST_CASE("decay probe preconditions and the θ = 0 case") {
  const GridSpec g(1, 256, 64 * pi);
  const Field packet = Field::from_function(g, [&](const Vec3& x) {
    const double y = x[0] - 32 * pi;
    return std::polar(std::exp(-y * y / 50.0), 0.5 * y);
  });
  const auto r = propagator_bound_probe(packet, {4, 2, 0}, 1e9, ProbeMode::decay, 0.0);
  CHECK(r.predicted_exponent == 0.0);
  CHECK(r.t_max == doctest::Approx(16 * pi));
  CHECK(std::abs(r.fitted_exponent) <= 0.15);

  const Field spread = random_field(g, 5);
  try {
    propagator_bound_probe(spread, {4, 2, 0}, 10, ProbeMode::decay, 1.0);
    FAIL("expected precondition violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precondition_violation);
  }
}
