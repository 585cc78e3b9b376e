#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "kgh/exponents.hpp"
#include "kgh/grid.hpp"
#include "kgh/modulation.hpp"
#include "kgh/norms.hpp"

namespace kgh {

// Sharp radial frequency cutoffs. Radii are indexed by the integer lattice
// radius K² = Σ k_a² (ξ = 2πk/L); a cutoff at K² keeps modes with Σ k_a² ≤ K²
// in the low part. K² = -1 denotes the empty low part.
struct RadialCut {
  Field low;
  Field high;
};

RadialCut radial_cut(const Field& field, std::int64_t radius_sq);

// Distinct Σ k_a² of modes with |f̂| > 1e-13 · max |f̂|, ascending.
std::vector<std::int64_t> occupied_radii(const Field& field);

// Upper bound for K(t, f) = inf_{f = x + y} ‖x‖_X + t ‖y‖_Y, minimized over the
// sharp radial cutoffs at every occupied radius (including the two trivial
// splits).
double approx_k_functional(const Field& field, double t, const NormSpec& x, const ModulationParams& y);

struct SplitResult {
  Field low;
  Field high;
  double N = 0.0;
  // Cutoff radius in ξ units; -1 when the low part is empty.
  double radius = -1.0;
  std::int64_t radius_sq = -1;
  double low_norm = 0.0;   // sobolev(regularity) of low
  double high_norm = 0.0;  // modulation norm of high
};

// M^{p_γ, p_γ'}_s parameters used for the rough part of the data.
ModulationParams split_params(const ExponentTable& table, double regularity);

// Finds, for a given N, the smallest lattice radius R whose high remainder
// satisfies ‖f_{>R}‖_{M^{p_γ,p_γ'}_s} ≤ 1/N, by binary search over the
// occupied radii up to d(n/2-1)², i.e. every mode off the Nyquist planes. Tail norms are cached so a
// schedule of N values reuses earlier evaluations.
class HighLowSplitter {
 public:
  HighLowSplitter(const Field& field, const ExponentTable& table, double regularity = 1.0);

  SplitResult split(double N);
  const ModulationParams& params() const noexcept { return params_; }

 private:
  double tail_norm(std::size_t candidate);

  Field hat_;
  ModulationParams params_;
  double regularity_;
  std::shared_ptr<const PartitionWeights> weights_;
  // Candidate K² values: -1 first, then occupied radii up to d(n/2-1)².
  std::vector<std::int64_t> candidates_;
  std::map<std::size_t, double> cache_;
  // Box norms of the whole field and the K² range each box touches; a cutoff
  // only changes the boxes its sphere passes through.
  std::vector<double> full_norms_;
  std::vector<std::int64_t> box_min_, box_max_;
};

// Throws ResolutionExhausted when even the largest resolvable cutoff leaves a
// high part above 1/N.
SplitResult high_low_split(const Field& field, double N, const ExponentTable& table, double regularity = 1.0);

}  // namespace kgh
