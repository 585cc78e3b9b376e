#include "kgh/split.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "kgh/error.hpp"

namespace kgh {
namespace {

std::int64_t lattice_radius_sq(const GridSpec& spec, std::size_t flat) {
  const auto k = spec.lattice(flat);
  return std::int64_t{k[0]} * k[0] + std::int64_t{k[1]} * k[1] + std::int64_t{k[2]} * k[2];
}

}  // namespace

RadialCut radial_cut(const Field& field, std::int64_t radius_sq) {
  const Field hat = field.to_frequency();
  const auto& spec = field.spec();
  RadialCut cut{Field(spec, Representation::frequency), Field(spec, Representation::frequency)};
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (lattice_radius_sq(spec, i) <= radius_sq)
      cut.low[i] = hat[i];
    else
      cut.high[i] = hat[i];
  }
  return cut;
}

std::vector<std::int64_t> occupied_radii(const Field& field) {
  const Field hat = field.to_frequency();
  const double threshold = 1e-13 * hat.max_modulus();
  std::set<std::int64_t> radii;
  for (std::size_t i = 0; i < hat.size(); ++i)
    if (std::abs(hat[i]) > threshold) radii.insert(lattice_radius_sq(field.spec(), i));
  return {radii.begin(), radii.end()};
}

double approx_k_functional(const Field& field, double t, const NormSpec& x, const ModulationParams& y) {
  if (!(t > 0.0)) throw Error(ErrorKind::invalid_parameter, "K-functional parameter t must be positive");
  const auto radii = occupied_radii(field);
  if (radii.empty()) return 0.0;
  const auto weights = standard_partition(field.spec());
  std::vector<std::int64_t> candidates{-1};
  candidates.insert(candidates.end(), radii.begin(), radii.end());
  double best = infinity;
  for (const auto r : candidates) {
    const auto cut = radial_cut(field, r);
    const double value = norm(cut.low, x) + t * modulation_norm(cut.high, y, *weights);
    best = std::min(best, value);
  }
  return best;
}

ModulationParams split_params(const ExponentTable& table, double regularity) {
  return {to_double(table.p_gamma), to_double(table.p_gamma_conjugate), regularity};
}

HighLowSplitter::HighLowSplitter(const Field& field, const ExponentTable& table, double regularity)
    : hat_(field.to_frequency()),
      params_(split_params(table, regularity)),
      regularity_(regularity),
      weights_(standard_partition(field.spec())) {
  const auto& spec = field.spec();
  const std::int64_t resolved = std::int64_t{spec.dimension()} * (spec.points() / 2 - 1) * (spec.points() / 2 - 1);
  candidates_.push_back(-1);
  for (const auto r : occupied_radii(field))
    if (r <= resolved) candidates_.push_back(r);

  full_norms_ = box_lebesgue_norms(hat_, params_.p, *weights_);
  for (const auto& box : weights_->boxes()) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = 0;
    for (const auto& a : box.axes[0])
      for (const auto& b : box.axes[1])
        for (const auto& c : box.axes[2]) {
          const std::int64_t r2 = std::int64_t{a.lattice} * a.lattice + std::int64_t{b.lattice} * b.lattice +
                                  std::int64_t{c.lattice} * c.lattice;
          lo = std::min(lo, r2);
          hi = std::max(hi, r2);
        }
    box_min_.push_back(lo);
    box_max_.push_back(hi);
  }
}

double HighLowSplitter::tail_norm(std::size_t candidate) {
  if (auto it = cache_.find(candidate); it != cache_.end()) return it->second;
  const std::int64_t r2 = candidates_[candidate];
  std::vector<std::uint8_t> straddling(full_norms_.size(), 0);
  bool any = false;
  for (std::size_t i = 0; i < full_norms_.size(); ++i)
    if (box_min_[i] <= r2 && box_max_[i] > r2 && full_norms_[i] != 0.0) straddling[i] = any = true;
  std::vector<double> norms(full_norms_.size(), 0.0);
  if (any) norms = box_lebesgue_norms(radial_cut(hat_, r2).high, params_.p, *weights_, straddling);
  for (std::size_t i = 0; i < full_norms_.size(); ++i)
    if (box_min_[i] > r2) norms[i] = full_norms_[i];
  const double value = combine_box_norms(norms, params_, *weights_);
  cache_.emplace(candidate, value);
  return value;
}

SplitResult HighLowSplitter::split(double N) {
  if (!(N > 0.0)) throw Error(ErrorKind::invalid_parameter, "split scale N must be positive");
  const double bound = 1.0 / N;
  std::size_t hi = candidates_.size() - 1;
  if (tail_norm(hi) > bound) {
    std::ostringstream msg;
    msg << "no resolvable cutoff achieves high-part bound 1/N = " << bound << "; best achievable " << tail_norm(hi);
    throw ResolutionExhausted(msg.str(), tail_norm(hi));
  }
  std::size_t lo = 0;
  if (tail_norm(lo) > bound) {
    // Invariant: tail(lo) > bound, tail(hi) <= bound.
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (tail_norm(mid) <= bound)
        hi = mid;
      else
        lo = mid;
    }
  } else {
    hi = 0;
  }

  const std::int64_t r2 = candidates_[hi];
  auto cut = radial_cut(hat_, r2);
  SplitResult result{std::move(cut.low), std::move(cut.high)};
  result.N = N;
  result.radius_sq = r2;
  result.radius = r2 < 0 ? -1.0 : hat_.spec().frequency_step() * std::sqrt(static_cast<double>(r2));
  result.low_norm = sobolev_norm(result.low, regularity_);
  result.high_norm = tail_norm(hi);
  return result;
}

SplitResult high_low_split(const Field& field, double N, const ExponentTable& table, double regularity) {
  HighLowSplitter splitter(field, table, regularity);
  return splitter.split(N);
}

}  // namespace kgh
