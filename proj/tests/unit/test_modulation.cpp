#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "calibration.hpp"
#include "kgh/corpus.hpp"
#include "kgh/error.hpp"
#include "kgh/exponents.hpp"
#include "kgh/fourier.hpp"
#include "kgh/modulation.hpp"
#include "kgh/norms.hpp"
#include "kgh/split.hpp"
#include "support.hpp"

using namespace kgh;
using kgh::testing::brute_force_dft;
using kgh::testing::random_field;
using kgh::testing::resample;
constexpr double pi = std::numbers::pi;

namespace {

Field plane_wave(const GridSpec& g, int k, Complex a = 1.0) {
  return Field::from_function(g, [&](const Vec3& x) { return a * std::polar(1.0, k * x[0]); });
}

double max_sum_deviation(const PartitionWeights& w) {
  double dev = 0.0;
  for (double s : w.weight_sums()) dev = std::max(dev, std::abs(s - 1.0));
  return dev;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  void add(double x) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
};

}  // namespace

TEST_CASE("bump window invariants") {
  for (const auto& w : {BumpWindow::standard(), BumpWindow::steep()}) {
    CHECK(w(0.0) == 1.0);
    CHECK(w(0.5) == 1.0);
    CHECK(w(-0.5) == 1.0);
    CHECK(w(1.0) == 0.0);
    CHECK(w(1.7) == 0.0);
    CHECK(w(0.75) == doctest::Approx(0.5));
    double prev = 1.0;
    for (int i = 0; i <= 100; ++i) {
      const double v = w(0.5 + 0.005 * i);
      CHECK(v <= prev);
      CHECK(v >= 0.0);
      prev = v;
    }
  }
}

TEST_CASE("partition of unity and support") {
  for (const auto& window : {BumpWindow::standard(), BumpWindow::steep()}) {
    for (auto [d, n, m] : {std::array{1, 64, 4}, std::array{2, 32, 2}, std::array{3, 16, 2}}) {
      const auto g = GridSpec::with_box_density(d, n, m);
      const PartitionWeights w(g, window);
      CHECK(max_sum_deviation(w) <= 1e-12);
      CHECK(w.max_box_index() <= n / (2 * m) + 1);
      for (const auto& box : w.boxes())
        for (int a = 0; a < d; ++a)
          for (const auto& aw : box.axes[a]) CHECK(std::abs(aw.lattice / double(m) - box.index[a]) < 1.0);
    }
  }
}

TEST_CASE("partition values at integer and half-integer frequencies") {
  const auto g = GridSpec::with_box_density(1, 64, 2);  // ξ step 1/2
  const PartitionWeights w(g);
  const std::size_t at3 = g.flatten({6, 0, 0});
  const std::size_t at35 = g.flatten({7, 0, 0});
  CHECK(w.weight({3, 0, 0}, at3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w.weight({2, 0, 0}, at3) == 0.0);
  CHECK(w.weight({4, 0, 0}, at3) == 0.0);
  CHECK(w.weight({3, 0, 0}, at35) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w.weight({4, 0, 0}, at35) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("box projection") {
  const GridSpec g(1, 32, 2 * pi);
  const Field f = plane_wave(g, 3);
  CHECK(relative_l2_difference(box_project(f, {3, 0, 0}).to_physical(), f) <= 1e-12);
  for (int k = -8; k <= 8; ++k)
    if (k != 3) CHECK(box_project(f, {k, 0, 0}).max_modulus() <= 1e-14);
  Field zero(g);
  CHECK(box_project(zero, {1, 0, 0}).max_modulus() == 0.0);

  // Independent oracle: brute-force DFT then mask by σ_k.
  const auto g2 = GridSpec::with_box_density(2, 16, 2);
  const PartitionWeights w(g2);
  const Field r = generate_corpus({.seed = 77, .count = 1, .alpha = 1.0, .real = false}, g2).front();
  const auto dft = brute_force_dft(r);
  for (const BoxIndex k : {BoxIndex{0, 0, 0}, BoxIndex{1, -2, 0}, BoxIndex{-3, 1, 0}}) {
    const Field p = box_project(r, k, w);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < g2.size(); ++i) {
      err = std::max(err, std::abs(p[i] - w.weight(k, i) * dft[i]));
      scale = std::max(scale, std::abs(dft[i]));
    }
    CHECK(err <= 1e-12 * scale);
  }
}

TEST_CASE("reconstruction under both profiles") {
  for (const auto& window : {BumpWindow::standard(), BumpWindow::steep()}) {
    for (auto [d, n, m] : {std::array{1, 64, 4}, std::array{2, 32, 4}, std::array{3, 16, 2}}) {
      const auto g = GridSpec::with_box_density(d, n, m);
      const PartitionWeights w(g, window);
      for (int s = 0; s < 5; ++s) {
        const Field f = random_field(g, 1000 + s);
        CHECK(relative_l2_difference(reconstruct(f, w).to_physical(), f) <= 1e-10);
      }
    }
  }
}

TEST_CASE("modulation norm closed forms") {
  const GridSpec g(1, 32, 2 * pi);
  CHECK(modulation_norm(Field(g), {3, 1.5, 1}) == 0.0);
  for (auto [p, q, s] : {std::array{2.0, 2.0, 0.0}, std::array{4.0, 4.0 / 3, 1.0}, std::array{1.0, infinity, -0.5},
                         std::array{infinity, 1.0, 2.0}}) {
    const ModulationParams mp{p, q, s};
    const double lp = std::isinf(p) ? 1.0 : std::pow(2 * pi, 1.0 / p);
    CHECK(modulation_norm(plane_wave(g, 3), mp) == doctest::Approx(std::pow(4.0, s) * lp).epsilon(1e-12));

    const Complex a(0.7, 0.2), b(-1.3, 0.0);
    const Field two = plane_wave(g, 3, a) + plane_wave(g, 10, b);
    const double x = std::pow(4.0, s) * std::abs(a) * lp, y = std::pow(11.0, s) * std::abs(b) * lp;
    const double expected = std::isinf(q) ? std::max(x, y) : std::pow(std::pow(x, q) + std::pow(y, q), 1.0 / q);
    CHECK(modulation_norm(two, mp) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS_AS(modulation_norm(plane_wave(g, 1), {0.5, 2, 0}), Error);
}

TEST_CASE("pruned box norms agree with per-box transforms") {
  const auto g = GridSpec::with_box_density(3, 16, 2);
  const auto w = standard_partition(g);
  const Field f = random_field(g, 4242);
  for (double p : {1.0, 3.0, 4.5, infinity}) {
    const auto fast = box_lebesgue_norms(f, p, *w);
    std::size_t i = 0;
    for (const auto& box : w->boxes()) {
      const double slow = lebesgue_norm(box_project(f, box.index, *w).to_physical(), p);
      CHECK(fast[i] == doctest::Approx(slow).epsilon(1e-11));
      ++i;
    }
  }
}

TEST_CASE("STFT norm") {
  const auto g = GridSpec::with_box_density(1, 64, 4);
  const Field window = gaussian_window(g, 2.0);
  CHECK(stft_norm(Field(g), {2, 2, 0}, window) == 0.0);
  CHECK_THROWS_AS(stft_norm(plane_wave(g, 1), {2, 2, 0}, Field(g)), Error);
  for (int s = 0; s < 5; ++s) {
    const Field f = random_field(g, 300 + s);
    CHECK(stft_norm(f, {2, 2, 0}, window) == doctest::Approx(lebesgue_norm(f, 2)).epsilon(1e-8));
  }
}

TEST_CASE("exponent table") {
  const auto t = exponent_table(Rational(5, 2), Rational(11, 5));
  CHECK(t.p_gamma == Rational(9, 2));
  CHECK(t.p_gamma_conjugate == Rational(9, 7));
  CHECK(t.gwp_bound == Rational(27, 11));
  CHECK(t.theta == Rational(9, 55));
  CHECK(*t.split_exp == Rational(9, 46));
  CHECK(*t.energy_exp == Rational(18, 23));
  CHECK(*t.growth_exp == Rational(9, 14));
  CHECK(*t.window_exp == Rational(14, 23));

  CHECK(exponent_table(Rational(5, 2), Rational(2)).theta == Rational(0));
  const auto top = exponent_table(Rational(5, 2), Rational(9, 2));
  CHECK(top.theta == Rational(1));
  CHECK(!top.split_exp.has_value());
  CHECK(!top.growth_exp.has_value());
  CHECK_THROWS_AS(exponent_table(Rational(5, 2), Rational(5)), Error);
  CHECK_THROWS_AS(exponent_table(Rational(3), Rational(2)), Error);

  // p_γ ∈ (2,6), θ < 1/3 exactly below the GWP bound, conjugates.
  for (int num = 1; num < 30; ++num) {
    const Rational gamma(num, 10);
    const auto e = exponent_table(gamma, Rational(2));
    CHECK(e.p_gamma > Rational(2));
    CHECK(e.p_gamma < Rational(6));
    CHECK(Rational(1) / e.p_gamma + Rational(1) / e.p_gamma_conjugate == Rational(1));
    if (gamma > Rational(2)) {
      for (int pn = 201; pn < 450; pn += 7) {
        const Rational p(pn, 100);
        if (p > e.p_gamma) break;
        const auto tp = exponent_table(gamma, p);
        CHECK((tp.theta < Rational(1, 3)) == (p < e.gwp_bound));
      }
    }
  }
}

TEST_CASE("K-functional over radial cutoffs") {
  const GridSpec g(1, 32, 2 * pi);
  const ModulationParams y{4.5, 9.0 / 7, 1};
  CHECK(approx_k_functional(Field(g), 1.0, NormSpec::sobolev(1), y) == 0.0);
  const Field f = plane_wave(g, 3);
  for (double t : {0.01, 0.3, 1.0, 10.0}) {
    const double expected = std::min(sobolev_norm(f, 1), t * modulation_norm(f, y));
    CHECK(approx_k_functional(f, t, NormSpec::sobolev(1), y) == doctest::Approx(expected).epsilon(1e-12));
  }
  const Field r = generate_corpus({.seed = 5, .count = 1, .alpha = 1.5}, g).front();
  for (double t : {0.1, 1.0, 5.0}) {
    const double k = approx_k_functional(r, t, NormSpec::sobolev(1), y);
    CHECK(k <= std::min(sobolev_norm(r, 1), t * modulation_norm(r, y)) * (1 + 1e-12));
  }
}

TEST_CASE("high-low split") {
  const auto table = exponent_table(Rational(5, 2), Rational(11, 5));
  const GridSpec g(1, 32, 2 * pi);
  const Field f = plane_wave(g, 3);
  const double m = modulation_norm(f, split_params(table, 1));

  const auto above = high_low_split(f, 2.0 / m, table);
  CHECK(above.high.max_modulus() <= 1e-13 * f.max_modulus());
  CHECK(relative_l2_difference(above.low.to_physical(), f) <= 1e-12);
  const auto below = high_low_split(f, 0.5 / m, table);
  CHECK(below.low.max_modulus() == 0.0);
  CHECK(below.radius == -1.0);

  const auto g3 = GridSpec::with_box_density(3, 16, 2);
  const Field r = generate_corpus({.seed = 9, .count = 1, .alpha = 2.2}, g3).front();
  HighLowSplitter splitter(r, table);
  double prev_low = 0.0;
  for (double N : {1.0, 2.0, 4.0, 8.0}) {
    const auto s = splitter.split(N);
    CHECK(s.high_norm <= 1.0 / N);
    CHECK(relative_l2_difference((s.low + s.high).to_physical(), r) <= 1e-12);
    CHECK(s.low_norm >= prev_low);
    prev_low = s.low_norm;
  }
  // All modes of a band-limited field are resolvable; Nyquist content is not.
  CHECK(splitter.split(1e12).high_norm == doctest::Approx(0.0));
  HighLowSplitter rough(random_field(g3, 31, true), table);
  try {
    rough.split(1e6);
    FAIL("expected resolution exhaustion");
  } catch (const ResolutionExhausted& e) {
    CHECK(e.best_bound() > 1e-12);
  }
}
