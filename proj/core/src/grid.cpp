#include "kgh/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kgh/error.hpp"
#include "kgh/fourier.hpp"
#include "kgh/norms.hpp"

namespace kgh {

GridSpec::GridSpec(int dimension, int points, double period)
    : dimension_(dimension), points_(points), period_(period), size_(1) {
  if (dimension < 1 || dimension > 3)
    throw Error(ErrorKind::invalid_parameter, "dimension must be 1, 2 or 3, got " + std::to_string(dimension));
  if (points < 8 || points % 2 != 0)
    throw Error(ErrorKind::invalid_parameter, "points per axis must be even and >= 8, got " + std::to_string(points));
  if (!(period > 0.0) || !std::isfinite(period))
    throw Error(ErrorKind::invalid_parameter, "period must be positive and finite");
  for (int a = 0; a < dimension; ++a) size_ *= static_cast<std::size_t>(points);
}

GridSpec GridSpec::with_box_density(int dimension, int points, int modes_per_unit) {
  if (modes_per_unit < 1) throw Error(ErrorKind::invalid_parameter, "modes per unit box must be >= 1");
  return GridSpec(dimension, points, 2.0 * std::numbers::pi * modes_per_unit);
}

double GridSpec::cell_volume() const noexcept { return std::pow(spacing(), dimension_); }
double GridSpec::volume() const noexcept { return std::pow(period_, dimension_); }
double GridSpec::frequency_step() const noexcept { return 2.0 * std::numbers::pi / period_; }

std::array<int, 3> GridSpec::unflatten(std::size_t flat) const noexcept {
  std::array<int, 3> idx{0, 0, 0};
  const auto n = static_cast<std::size_t>(points_);
  for (int a = dimension_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

std::size_t GridSpec::flatten(const std::array<int, 3>& storage) const noexcept {
  std::size_t flat = 0;
  for (int a = 0; a < dimension_; ++a) flat = flat * points_ + static_cast<std::size_t>(storage[a]);
  return flat;
}

std::array<int, 3> GridSpec::lattice(std::size_t flat) const noexcept {
  auto idx = unflatten(flat);
  for (int a = 0; a < dimension_; ++a) idx[a] = lattice_index(idx[a]);
  return idx;
}

Frequency GridSpec::frequency(std::size_t flat) const noexcept {
  const auto k = lattice(flat);
  const double step = frequency_step();
  return {k[0] * step, k[1] * step, k[2] * step};
}

double GridSpec::frequency_norm_sq(std::size_t flat) const noexcept {
  const auto xi = frequency(flat);
  return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
}

Vec3 GridSpec::position(std::size_t flat) const noexcept {
  const auto idx = unflatten(flat);
  const double h = spacing();
  return {idx[0] * h, idx[1] * h, idx[2] * h};
}

Field::Field(GridSpec spec, Representation rep)
    : spec_(spec), values_(spec.size(), Complex{0.0, 0.0}), rep_(rep) {}

Field::Field(GridSpec spec, std::vector<Complex> values, Representation rep)
    : spec_(spec), values_(std::move(values)), rep_(rep) {
  if (values_.size() != spec_.size())
    throw Error(ErrorKind::contract_violation, "field has " + std::to_string(values_.size()) +
                                                   " values, grid expects " + std::to_string(spec_.size()));
}

Field Field::to_physical() const {
  return is_physical() ? *this : transform(*this, Direction::inverse);
}

Field Field::to_frequency() const {
  return is_physical() ? transform(*this, Direction::forward) : *this;
}

Field Field::real_part() const {
  Field out = to_physical();
  for (auto& v : out.values_) v = {v.real(), 0.0};
  return out;
}

Field Field::imag_part() const {
  Field out = to_physical();
  for (auto& v : out.values_) v = {v.imag(), 0.0};
  return out;
}

bool Field::is_real(double tol) const {
  const Field phys = to_physical();
  double max_mod = 0.0, max_imag = 0.0;
  for (const auto& v : phys.values_) {
    max_mod = std::max(max_mod, std::abs(v));
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  return max_imag <= tol * max_mod;
}

double Field::max_modulus() const noexcept {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

void Field::check_compatible(const Field& other) const {
  if (!(spec_ == other.spec_)) throw Error(ErrorKind::grid_mismatch, "fields live on different grids");
  if (rep_ != other.rep_) throw Error(ErrorKind::contract_violation, "fields are in different representations");
}

Field& Field::operator+=(const Field& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(Complex scale) noexcept {
  for (auto& v : values_) v *= scale;
  return *this;
}

double relative_l2_difference(const Field& a, const Field& b) {
  const Field pa = a.to_physical();
  const Field pb = b.to_physical();
  const double diff = lebesgue_norm(pa - pb, 2.0);
  const double ref = lebesgue_norm(pb, 2.0);
  return ref > 0.0 ? diff / ref : diff;
}

}  // namespace kgh
