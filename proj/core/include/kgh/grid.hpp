#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace kgh {

using Complex = std::complex<double>;

// Angular frequency ξ (or position x) with unused trailing axes set to zero.
using Vec3 = std::array<double, 3>;
using Frequency = Vec3;

// Periodic box [0, L)^d sampled with n points per axis. The frequency lattice
// is ξ = 2πk/L with k ∈ {-n/2, ..., n/2-1}^d, stored in FFT order along each
// axis (k = 0, 1, ..., n/2-1, -n/2, ..., -1). Flat storage is row-major with
// axis 0 slowest.
class GridSpec {
 public:
  GridSpec(int dimension, int points, double period);

  // Box of period L = 2πm: the ξ-lattice spacing is 1/m and every unit
  // frequency box holds m^d lattice modes.
  static GridSpec with_box_density(int dimension, int points, int modes_per_unit);

  int dimension() const noexcept { return dimension_; }
  int points() const noexcept { return points_; }
  double period() const noexcept { return period_; }
  std::size_t size() const noexcept { return size_; }

  double spacing() const noexcept { return period_ / points_; }
  double cell_volume() const noexcept;
  double volume() const noexcept;
  double frequency_step() const noexcept;

  int lattice_index(int storage) const noexcept {
    return storage < points_ / 2 ? storage : storage - points_;
  }
  int storage_index(int lattice) const noexcept {
    return lattice >= 0 ? lattice : lattice + points_;
  }

  // Per-axis storage indices of a flat index (unused axes are 0).
  std::array<int, 3> unflatten(std::size_t flat) const noexcept;
  std::size_t flatten(const std::array<int, 3>& storage) const noexcept;

  std::array<int, 3> lattice(std::size_t flat) const noexcept;
  Frequency frequency(std::size_t flat) const noexcept;
  double frequency_norm_sq(std::size_t flat) const noexcept;
  Vec3 position(std::size_t flat) const noexcept;

  friend bool operator==(const GridSpec& a, const GridSpec& b) noexcept {
    return a.dimension_ == b.dimension_ && a.points_ == b.points_ && a.period_ == b.period_;
  }

 private:
  int dimension_;
  int points_;
  double period_;
  std::size_t size_;
};

enum class Representation : std::uint8_t { physical = 0, frequency = 1 };

// A complex field on a GridSpec, held either as grid samples f(x_j) or as
// frequency coefficients f̂(ξ_k) = (L/n)^d Σ_j f(x_j) e^{-iξ_k·x_j}.
class Field {
 public:
  explicit Field(GridSpec spec, Representation rep = Representation::physical);
  Field(GridSpec spec, std::vector<Complex> values, Representation rep);

  template <class Fn>
  static Field from_function(const GridSpec& spec, Fn&& fn) {
    Field out(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) out.values_[i] = fn(spec.position(i));
    return out;
  }

  const GridSpec& spec() const noexcept { return spec_; }
  Representation representation() const noexcept { return rep_; }
  bool is_physical() const noexcept { return rep_ == Representation::physical; }

  std::span<Complex> values() noexcept { return values_; }
  std::span<const Complex> values() const noexcept { return values_; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  Field to_physical() const;
  Field to_frequency() const;

  // Pointwise real part, returned in physical representation.
  Field real_part() const;
  Field imag_part() const;

  // max |Im f| ≤ tol · max |f| in physical space.
  bool is_real(double tol = 1e-12) const;
  double max_modulus() const noexcept;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(Complex scale) noexcept;

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, Complex s) { return a *= s; }
  friend Field operator*(Complex s, Field a) { return a *= s; }

 private:
  void check_compatible(const Field& other) const;

  GridSpec spec_;
  std::vector<Complex> values_;
  Representation rep_;
};

// ‖a - b‖₂ / ‖b‖₂ using Riemann-sum L² norms; returns ‖a - b‖₂ when b = 0.
double relative_l2_difference(const Field& a, const Field& b);

}  // namespace kgh
