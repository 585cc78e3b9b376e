#include "kgh/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <tuple>

#include "kgh/error.hpp"
#include "kgh/fourier.hpp"
#include "kgh/norms.hpp"

namespace kgh {

BumpWindow::BumpWindow(std::function<double(double)> glue) : glue_(std::move(glue)) {}

BumpWindow BumpWindow::standard() {
  return BumpWindow([](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; });
}

BumpWindow BumpWindow::steep() {
  return BumpWindow([](double x) { return x > 0.0 ? std::exp(-1.0 / (x * x)) : 0.0; });
}

double BumpWindow::operator()(double r) const {
  const double a = std::abs(r);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  const double t = 2.0 * (1.0 - a);
  const double up = glue_(t);
  const double down = glue_(1.0 - t);
  return up / (up + down);
}

double Box::euclidean_index() const noexcept {
  return std::sqrt(double(index[0]) * index[0] + double(index[1]) * index[1] + double(index[2]) * index[2]);
}

std::size_t Box::support_size() const noexcept {
  return axes[0].size() * axes[1].size() * axes[2].size();
}

PartitionWeights::PartitionWeights(const GridSpec& spec, const BumpWindow& window) : spec_(spec) {
  const int n = spec.points();
  const double step = spec.frequency_step();
  for (int s = 0; s < n; ++s) {
    const int k = spec.lattice_index(s);
    const double xi = k * step;
    const int lo = static_cast<int>(std::floor(xi)) - 1;
    const int hi = static_cast<int>(std::ceil(xi)) + 1;
    double total = 0.0;
    for (int b = lo; b <= hi; ++b) total += window(xi - b);
    for (int b = lo; b <= hi; ++b) {
      const double rho = window(xi - b);
      if (rho > 0.0) axis_boxes_[b].push_back({s, k, rho / total});
    }
  }
  for (auto& [b, list] : axis_boxes_) {
    std::sort(list.begin(), list.end(), [](const AxisWeight& x, const AxisWeight& y) { return x.lattice < y.lattice; });
    max_index_ = std::max(max_index_, std::abs(b));
  }

  const std::vector<AxisWeight> unit{{0, 0, 1.0}};
  const int d = spec.dimension();
  std::vector<int> keys;
  for (const auto& [b, list] : axis_boxes_) keys.push_back(b);
  const std::vector<int> zero{0};
  const auto& k0 = keys;
  const auto& k1 = d >= 2 ? keys : zero;
  const auto& k2 = d >= 3 ? keys : zero;
  for (int a : k0)
    for (int b : k1)
      for (int c : k2) {
        Box box;
        box.index = {a, d >= 2 ? b : 0, d >= 3 ? c : 0};
        box.axes[0] = axis_boxes_.at(a);
        box.axes[1] = d >= 2 ? axis_boxes_.at(b) : unit;
        box.axes[2] = d >= 3 ? axis_boxes_.at(c) : unit;
        lookup_.emplace(box.index, boxes_.size());
        boxes_.push_back(std::move(box));
      }
}

const Box* PartitionWeights::find(const BoxIndex& k) const {
  auto it = lookup_.find(k);
  return it == lookup_.end() ? nullptr : &boxes_[it->second];
}

double PartitionWeights::weight(const BoxIndex& k, std::size_t flat) const {
  const Box* box = find(k);
  if (box == nullptr) return 0.0;
  const auto storage = spec_.unflatten(flat);
  double w = 1.0;
  for (int a = 0; a < 3; ++a) {
    const auto& list = box->axes[a];
    auto it = std::find_if(list.begin(), list.end(), [&](const AxisWeight& e) { return e.storage == storage[a]; });
    if (it == list.end()) return 0.0;
    w *= it->weight;
  }
  return w;
}

namespace {

// Visits every (flat index, σ_k) pair of a box.
template <class Fn>
void for_each_mode(const GridSpec& spec, const Box& box, Fn&& fn) {
  for (const auto& e0 : box.axes[0])
    for (const auto& e1 : box.axes[1])
      for (const auto& e2 : box.axes[2]) {
        const std::size_t flat = spec.flatten({e0.storage, e1.storage, e2.storage});
        fn(flat, e0.weight * e1.weight * e2.weight);
      }
}

}  // namespace

std::vector<double> PartitionWeights::weight_sums() const {
  std::vector<double> sums(spec_.size(), 0.0);
  for (const auto& box : boxes_) for_each_mode(spec_, box, [&](std::size_t flat, double w) { sums[flat] += w; });
  return sums;
}

std::shared_ptr<const PartitionWeights> standard_partition(const GridSpec& spec) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, std::shared_ptr<const PartitionWeights>> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_tuple(spec.dimension(), spec.points(), spec.period());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto weights = std::make_shared<const PartitionWeights>(spec);
  cache.emplace(key, weights);
  return weights;
}

void validate(const ModulationParams& params) {
  if (!(params.p >= 1.0) || !(params.q >= 1.0))
    throw Error(ErrorKind::invalid_parameter, "modulation exponents p, q must be >= 1");
  if (!std::isfinite(params.s)) throw Error(ErrorKind::invalid_parameter, "modulation weight s must be finite");
}

Field box_project(const Field& field, const BoxIndex& k, const PartitionWeights& weights) {
  if (!(field.spec() == weights.spec())) throw Error(ErrorKind::grid_mismatch, "partition weights built for another grid");
  const Field hat = field.to_frequency();
  Field out(field.spec(), Representation::frequency);
  if (const Box* box = weights.find(k)) {
    for_each_mode(field.spec(), *box, [&](std::size_t flat, double w) { out[flat] = w * hat[flat]; });
  }
  return out;
}

Field box_project(const Field& field, const BoxIndex& k) {
  return box_project(field, k, *standard_partition(field.spec()));
}

Field reconstruct(const Field& field, const PartitionWeights& weights) {
  if (!(field.spec() == weights.spec())) throw Error(ErrorKind::grid_mismatch, "partition weights built for another grid");
  const Field hat = field.to_frequency();
  Field out(field.spec(), Representation::frequency);
  for (const auto& box : weights.boxes())
    for_each_mode(field.spec(), box, [&](std::size_t flat, double w) { out[flat] += w * hat[flat]; });
  return out;
}

namespace {

double accumulate_power(double acc, double modulus, double p) {
  if (std::isinf(p)) return std::max(acc, modulus);
  if (p == 1.0) return acc + modulus;
  return acc + std::pow(modulus, p);
}

double finish_power(double acc, double p, double measure) {
  if (std::isinf(p)) return acc;
  return std::pow(measure * acc, 1.0 / p);
}

// |z|^p from |z|², with multiplications and square roots when p/2 is a
// multiple of 1/4 (every exponent used by the split and the probes).
class PowerOfSquare {
 public:
  explicit PowerOfSquare(double p) : p_(p) {
    const double quarters = 2.0 * p;
    if (std::isfinite(p) && quarters == std::floor(quarters) && quarters <= 64.0) {
      whole_ = static_cast<int>(quarters) / 4;
      frac_ = static_cast<int>(quarters) % 4;
      fast_ = true;
    }
  }

  double operator()(double sq) const {
    if (!fast_) return std::pow(sq, 0.5 * p_);
    double r = 1.0;
    for (int i = 0; i < whole_; ++i) r *= sq;
    if (frac_ == 0) return r;
    const double root = std::sqrt(sq);
    if (frac_ == 2) return r * root;
    const double quarter = std::sqrt(root);
    return frac_ == 1 ? r * quarter : r * root * quarter;
  }

 private:
  double p_;
  bool fast_ = false;
  int whole_ = 0;
  int frac_ = 0;
};

// Σ |v|^p (or max |v| for p = ∞) over a buffer.
double power_sum(std::span<const Complex> values, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::norm(v));
    return std::sqrt(m);
  }
  const PowerOfSquare power(p);
  double acc = 0.0;
  for (const auto& v : values) acc += power(std::norm(v));
  return acc;
}

double merge_power(double acc, double part, double p) { return std::isinf(p) ? std::max(acc, part) : acc + part; }

// Evaluates the box piece on the full grid from its few nonzero modes by
// separable direct summation (cheap when the box holds few modes per axis).
class PrunedEvaluator {
 public:
  explicit PrunedEvaluator(const GridSpec& spec) : spec_(spec), twiddle_(spec.points()) {
    const int n = spec.points();
    for (int r = 0; r < n; ++r) twiddle_[r] = std::polar(1.0, 2.0 * std::numbers::pi * r / n);
  }

  double lebesgue(const Box& box, const Field& hat, double p) {
    const int d = spec_.dimension();
    const int n = spec_.points();
    const std::array<int, 3> nx{n, d >= 2 ? n : 1, d >= 3 ? n : 1};
    const std::array<std::size_t, 3> sz{box.axes[0].size(), box.axes[1].size(), box.axes[2].size()};
    const double inv_volume = 1.0 / spec_.volume();

    coeff_.assign(sz[0] * sz[1] * sz[2], Complex{});
    bool any = false;
    for (std::size_t i0 = 0; i0 < sz[0]; ++i0)
      for (std::size_t i1 = 0; i1 < sz[1]; ++i1)
        for (std::size_t i2 = 0; i2 < sz[2]; ++i2) {
          const auto& e0 = box.axes[0][i0];
          const auto& e1 = box.axes[1][i1];
          const auto& e2 = box.axes[2][i2];
          const Complex c = hat[spec_.flatten({e0.storage, e1.storage, e2.storage})] *
                            (e0.weight * e1.weight * e2.weight * inv_volume);
          coeff_[(i0 * sz[1] + i1) * sz[2] + i2] = c;
          any = any || c != Complex{};
        }
    if (!any) return 0.0;

    // Axis 2: t1[i0][i1][x2].
    t1_.assign(sz[0] * sz[1] * nx[2], Complex{});
    for (std::size_t i0 = 0; i0 < sz[0]; ++i0)
      for (std::size_t i1 = 0; i1 < sz[1]; ++i1)
        for (std::size_t i2 = 0; i2 < sz[2]; ++i2) {
          const Complex c = coeff_[(i0 * sz[1] + i1) * sz[2] + i2];
          const int k = box.axes[2][i2].lattice;
          Complex* row = &t1_[(i0 * sz[1] + i1) * nx[2]];
          for (int x = 0; x < nx[2]; ++x) row[x] += c * twiddle_[mod(k * x)];
        }
    // Axis 1: t2[i0][x1][x2].
    t2_.assign(sz[0] * nx[1] * nx[2], Complex{});
    for (std::size_t i0 = 0; i0 < sz[0]; ++i0)
      for (std::size_t i1 = 0; i1 < sz[1]; ++i1) {
        const int k = box.axes[1][i1].lattice;
        const Complex* src = &t1_[(i0 * sz[1] + i1) * nx[2]];
        for (int x1 = 0; x1 < nx[1]; ++x1) {
          const Complex tw = twiddle_[mod(k * x1)];
          Complex* dst = &t2_[(i0 * nx[1] + x1) * nx[2]];
          for (int x2 = 0; x2 < nx[2]; ++x2) dst[x2] += tw * src[x2];
        }
      }
    // Axis 0, accumulated straight into the power sum.
    const std::size_t plane = static_cast<std::size_t>(nx[1]) * nx[2];
    row_.resize(plane);
    double acc = 0.0;
    for (int x0 = 0; x0 < nx[0]; ++x0) {
      std::fill(row_.begin(), row_.end(), Complex{});
      for (std::size_t i0 = 0; i0 < sz[0]; ++i0) {
        const Complex tw = twiddle_[mod(box.axes[0][i0].lattice * x0)];
        const Complex* src = &t2_[i0 * plane];
        for (std::size_t j = 0; j < plane; ++j) row_[j] += tw * src[j];
      }
      acc = merge_power(acc, power_sum(row_, p), p);
    }
    return finish_power(acc, p, spec_.cell_volume());
  }

 private:
  int mod(int r) const noexcept {
    const int n = spec_.points();
    r %= n;
    return r < 0 ? r + n : r;
  }

  GridSpec spec_;
  std::vector<Complex> twiddle_;
  std::vector<Complex> coeff_, t1_, t2_, row_;
};

double fft_box_lebesgue(const Box& box, const Field& hat, double p, std::vector<Complex>& scratch) {
  const auto& spec = hat.spec();
  scratch.assign(spec.size(), Complex{});
  bool any = false;
  for_each_mode(spec, box, [&](std::size_t flat, double w) {
    scratch[flat] = w * hat[flat];
    any = any || scratch[flat] != Complex{};
  });
  if (!any) return 0.0;
  inverse_dft(spec, scratch, scratch);
  return finish_power(power_sum(scratch, p), p, spec.cell_volume());
}

}  // namespace

std::vector<double> box_lebesgue_norms(const Field& field, double p, const PartitionWeights& weights) {
  return box_lebesgue_norms(field, p, weights, {});
}

std::vector<double> box_lebesgue_norms(const Field& field, double p, const PartitionWeights& weights,
                                       std::span<const std::uint8_t> selected) {
  if (!(p >= 1.0)) throw Error(ErrorKind::invalid_parameter, "Lebesgue exponent must be >= 1");
  const auto& spec = field.spec();
  if (!(spec == weights.spec())) throw Error(ErrorKind::grid_mismatch, "partition weights built for another grid");
  const auto boxes = weights.boxes();
  if (!selected.empty() && selected.size() != boxes.size())
    throw Error(ErrorKind::contract_violation, "box selection has the wrong length");
  const Field hat = field.to_frequency();
  std::vector<double> out(boxes.size(), 0.0);
  auto wanted = [&](std::size_t i) { return selected.empty() || selected[i] != 0; };

  if (p == 2.0) {
    // Discrete Parseval: ‖g‖₂² = L^{-d} Σ |ĝ|².
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (!wanted(i)) continue;
      double sum = 0.0;
      for_each_mode(spec, boxes[i], [&](std::size_t flat, double w) { sum += std::norm(w * hat[flat]); });
      out[i] = std::sqrt(sum / spec.volume());
    }
    return out;
  }

  const double log_size = std::log2(static_cast<double>(spec.size()));
  PrunedEvaluator pruned(spec);
  std::vector<Complex> scratch;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (!wanted(i)) continue;
    const auto& box = boxes[i];
    const std::size_t widest = std::max({box.axes[0].size(), box.axes[1].size(), box.axes[2].size()});
    out[i] = static_cast<double>(widest) <= 2.0 * log_size ? pruned.lebesgue(box, hat, p)
                                                           : fft_box_lebesgue(box, hat, p, scratch);
  }
  return out;
}

double combine_box_norms(std::span<const double> norms, const ModulationParams& params,
                         const PartitionWeights& weights) {
  validate(params);
  const auto boxes = weights.boxes();
  if (norms.size() != boxes.size()) throw Error(ErrorKind::contract_violation, "one norm per box expected");
  double acc = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (norms[i] == 0.0) continue;
    const double weighted = std::pow(1.0 + boxes[i].euclidean_index(), params.s) * norms[i];
    acc = std::isinf(params.q) ? std::max(acc, weighted) : acc + std::pow(weighted, params.q);
  }
  return std::isinf(params.q) ? acc : std::pow(acc, 1.0 / params.q);
}

double modulation_norm(const Field& field, const ModulationParams& params, const PartitionWeights& weights) {
  validate(params);
  return combine_box_norms(box_lebesgue_norms(field, params.p, weights), params, weights);
}

double modulation_norm(const Field& field, const ModulationParams& params) {
  return modulation_norm(field, params, *standard_partition(field.spec()));
}

Field gaussian_window(const GridSpec& spec, double width) {
  if (!(width > 0.0)) throw Error(ErrorKind::invalid_parameter, "window width must be positive");
  const double L = spec.period();
  Field g = Field::from_function(spec, [&](const Vec3& x) {
    double r2 = 0.0;
    for (int a = 0; a < spec.dimension(); ++a) {
      double y = x[a];
      if (y >= 0.5 * L) y -= L;
      r2 += y * y;
    }
    return Complex{std::exp(-0.5 * r2 / (width * width)), 0.0};
  });
  g *= 1.0 / lebesgue_norm(g, 2.0);
  return g;
}

double stft_norm(const Field& field, const ModulationParams& params, const Field& window) {
  validate(params);
  const auto& spec = field.spec();
  if (!(spec == window.spec())) throw Error(ErrorKind::grid_mismatch, "window lives on another grid");
  const double gnorm = lebesgue_norm(window, 2.0);
  if (!(gnorm > 0.0)) throw Error(ErrorKind::invalid_parameter, "STFT window must be nonzero");

  const Field f = field.to_physical();
  const Field g = window.to_physical();
  std::vector<Complex> gconj(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) gconj[i] = std::conj(g[i]) / gnorm;

  const int n = spec.points();
  const int d = spec.dimension();
  std::vector<double> column(spec.size(), 0.0);  // Σ_x |V(x, ξ)|^p per ξ
  std::vector<Complex> buf(spec.size());
  for (std::size_t shift = 0; shift < spec.size(); ++shift) {
    const auto a = spec.unflatten(shift);
    for (std::size_t j = 0; j < spec.size(); ++j) {
      auto idx = spec.unflatten(j);
      for (int ax = 0; ax < d; ++ax) idx[ax] = (idx[ax] - a[ax] + n) % n;
      buf[j] = f[j] * gconj[spec.flatten(idx)];
    }
    forward_dft(spec, buf, buf);
    for (std::size_t k = 0; k < spec.size(); ++k) column[k] = accumulate_power(column[k], std::abs(buf[k]), params.p);
  }

  double acc = 0.0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double col = finish_power(column[k], params.p, spec.cell_volume());
    const double w = params.s == 0.0 ? 1.0 : std::pow(1.0 + spec.frequency_norm_sq(k), 0.5 * params.s);
    acc = std::isinf(params.q) ? std::max(acc, w * col) : acc + std::pow(w * col, params.q);
  }
  return std::isinf(params.q) ? acc : std::pow(acc / spec.volume(), 1.0 / params.q);
}

}  // namespace kgh
