#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "kgh/grid.hpp"

namespace kgh {

// Smooth scalar profile equal to 1 on |r| ≤ 1/2 and 0 on |r| ≥ 1, monotone in
// between. Built from a glue function h (h(x) → 0 as x → 0+, positive for
// x > 0) as h(t) / (h(t) + h(1 - t)) with t = 2(1 - |r|).
class BumpWindow {
 public:
  explicit BumpWindow(std::function<double(double)> glue);

  // h(x) = e^{-1/x}.
  static BumpWindow standard();
  // h(x) = e^{-1/x²}; an alternative C^∞ profile for robustness checks.
  static BumpWindow steep();

  double operator()(double r) const;

 private:
  std::function<double(double)> glue_;
};

using BoxIndex = std::array<int, 3>;

struct AxisWeight {
  int storage;  // storage index along the axis
  int lattice;  // signed lattice index along the axis
  double weight;
};

// One frequency box: σ_k(ξ) = Π_a σ¹_{k_a}(ξ_a), listed per axis over the
// lattice modes where the one-dimensional factor is nonzero.
struct Box {
  BoxIndex index{0, 0, 0};
  std::array<std::vector<AxisWeight>, 3> axes;

  double euclidean_index() const noexcept;
  std::size_t support_size() const noexcept;
};

// The frequency-uniform partition of unity σ_k = ρ_k / Σ_l ρ_l restricted to a
// grid. Because ρ is a tensor product of one-dimensional profiles the
// normalization factorizes per axis.
class PartitionWeights {
 public:
  explicit PartitionWeights(const GridSpec& spec, const BumpWindow& window = BumpWindow::standard());

  const GridSpec& spec() const noexcept { return spec_; }
  std::span<const Box> boxes() const noexcept { return boxes_; }
  const Box* find(const BoxIndex& k) const;

  // σ_k(ξ) at a flat frequency index; 0 for boxes without support there.
  double weight(const BoxIndex& k, std::size_t flat) const;
  // Σ_k σ_k(ξ) for every lattice mode.
  std::vector<double> weight_sums() const;
  // Largest |k|_∞ among boxes carrying weight.
  int max_box_index() const noexcept { return max_index_; }

 private:
  GridSpec spec_;
  std::vector<Box> boxes_;
  std::map<BoxIndex, std::size_t> lookup_;
  // One-dimensional weights per integer box (shared by every axis).
  std::map<int, std::vector<AxisWeight>> axis_boxes_;
  int max_index_ = 0;
};

// Partition weights for the standard window, built once per grid and shared.
std::shared_ptr<const PartitionWeights> standard_partition(const GridSpec& spec);

struct ModulationParams {
  double p = 2.0;
  double q = 2.0;
  double s = 0.0;
};

void validate(const ModulationParams& params);

// □_k f = F⁻¹ σ_k F f, returned in frequency representation.
Field box_project(const Field& field, const BoxIndex& k, const PartitionWeights& weights);
Field box_project(const Field& field, const BoxIndex& k);

// Σ_k □_k f accumulated box by box in frequency space.
Field reconstruct(const Field& field, const PartitionWeights& weights);

// ‖□_k f‖_{L^p} for every box, in weights.boxes() order.
std::vector<double> box_lebesgue_norms(const Field& field, double p, const PartitionWeights& weights);
// Only boxes with selected[i] != 0 are evaluated; the other entries are 0.
std::vector<double> box_lebesgue_norms(const Field& field, double p, const PartitionWeights& weights,
                                       std::span<const std::uint8_t> selected);
// ℓ^q_k assembly of per-box L^p norms given in weights.boxes() order.
double combine_box_norms(std::span<const double> norms, const ModulationParams& params,
                         const PartitionWeights& weights);

// ‖ (1+|k|)^s ‖□_k f‖_{L^p} ‖_{ℓ^q_k}.
double modulation_norm(const Field& field, const ModulationParams& params, const PartitionWeights& weights);
double modulation_norm(const Field& field, const ModulationParams& params);

// Unit-L² Gaussian exp(-|x|²/(2 width²)) centered at the origin, periodized by
// minimum image.
Field gaussian_window(const GridSpec& spec, double width);

// Discrete mixed norm of V_g f(x, ξ) = ∫ f(t) conj(g(t - x)) e^{-iξ·t} dt:
// L^p over grid shifts x, then weighted L^q over lattice ξ with measure L^{-d}
// and weight (1+|ξ|²)^{s/2}. The window is normalized to unit L² internally.
// Costs n^d forward transforms.
double stft_norm(const Field& field, const ModulationParams& params, const Field& window);

}  // namespace kgh
