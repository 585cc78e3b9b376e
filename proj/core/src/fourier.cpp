#include "kgh/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "kgh/error.hpp"

namespace kgh {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// FFTW's planner is not thread-safe; plans are created once per (d, n) under a
// lock and executed through the new-array interface afterwards.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  const PlanPair& get(int dimension, int points) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(dimension, points);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    int dims[3] = {points, points, points};
    std::size_t total = 1;
    for (int a = 0; a < dimension; ++a) total *= static_cast<std::size_t>(points);
    auto* buf = fftw_alloc_complex(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair plans;
    plans.forward = fftw_plan_dft(dimension, dims, buf, buf, FFTW_FORWARD, flags);
    plans.backward = fftw_plan_dft(dimension, dims, buf, buf, FFTW_BACKWARD, flags);
    fftw_free(buf);
    return plans_.emplace(key, plans).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void execute(const GridSpec& spec, std::span<const Complex> in, std::span<Complex> out, bool forward) {
  if (in.size() != spec.size() || out.size() != spec.size())
    throw Error(ErrorKind::contract_violation, "transform buffer size does not match grid");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  const auto& plans = plan_cache().get(spec.dimension(), spec.points());
  auto* data = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(forward ? plans.forward : plans.backward, data, data);
  const double scale = forward ? spec.cell_volume() : 1.0 / spec.volume();
  for (auto& v : out) v *= scale;
}

}  // namespace

void forward_dft(const GridSpec& spec, std::span<const Complex> in, std::span<Complex> out) {
  execute(spec, in, out, true);
}

void inverse_dft(const GridSpec& spec, std::span<const Complex> in, std::span<Complex> out) {
  execute(spec, in, out, false);
}

Field transform(const Field& field, Direction direction) {
  const bool forward = direction == Direction::forward;
  const auto expected = forward ? Representation::physical : Representation::frequency;
  if (field.representation() != expected)
    throw Error(ErrorKind::contract_violation,
                forward ? "forward transform needs a physical-space field" : "inverse transform needs a frequency-space field");
  Field out(field.spec(), forward ? Representation::frequency : Representation::physical);
  execute(field.spec(), field.values(), out.values(), forward);
  return out;
}

double japanese_bracket(const Frequency& xi) noexcept {
  return std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
}

Field apply_multiplier(const Field& field, const Symbol& symbol) {
  const auto& spec = field.spec();
  std::vector<Complex> table(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto xi = spec.frequency(i);
    const Complex m = symbol(xi);
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
      std::ostringstream msg;
      msg << "symbol is not finite at xi = (" << xi[0];
      for (int a = 1; a < spec.dimension(); ++a) msg << ", " << xi[a];
      msg << ")";
      throw Error(ErrorKind::singular_symbol, msg.str());
    }
    table[i] = m;
  }
  return apply_multiplier(field, std::span<const Complex>(table));
}

Field apply_multiplier(const Field& field, std::span<const Complex> table) {
  if (table.size() != field.size()) throw Error(ErrorKind::contract_violation, "symbol table size does not match grid");
  Field hat = field.to_frequency();
  auto v = hat.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= table[i];
  return field.is_physical() ? hat.to_physical() : hat;
}

Field apply_multiplier(const Field& field, std::span<const double> table) {
  if (table.size() != field.size()) throw Error(ErrorKind::contract_violation, "symbol table size does not match grid");
  Field hat = field.to_frequency();
  auto v = hat.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= table[i];
  return field.is_physical() ? hat.to_physical() : hat;
}

Field bessel_power(const Field& field, double sigma) {
  if (sigma == 0.0) return field;
  const auto table = tabulate_radial(field.spec(), [sigma](double xi2) { return std::pow(1.0 + xi2, 0.5 * sigma); });
  return apply_multiplier(field, std::span<const double>(table));
}

std::vector<double> tabulate_radial(const GridSpec& spec, const std::function<double(double)>& fn) {
  std::vector<double> table(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) table[i] = fn(spec.frequency_norm_sq(i));
  return table;
}

}  // namespace kgh
