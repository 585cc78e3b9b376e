#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kgh/grid.hpp"

namespace kgh {

// Random fields with |f̂(ξ)| ∝ ⟨ξ⟩^{-α} and independent uniform phases on the
// modes with |k_a| ≤ band on every axis. Each field is scaled to L² norm
// `amplitude`. α > d/2 is the regime where the corpus stays in the
// M^{p,p'} classes used by the split; smaller α is allowed.
struct CorpusSpec {
  std::uint64_t seed = 1;
  int count = 1;
  double alpha = 2.2;
  double amplitude = 1.0;
  int band = 0;       // 0 selects floor(n/3), the dealiasing band
  bool real = true;   // Hermitian spectra
};

// Name and version of the generator, echoed into output headers.
inline constexpr const char* corpus_generator = "mt19937_64/envelope-v1";

std::vector<Field> generate_corpus(const CorpusSpec& spec, const GridSpec& grid);

}  // namespace kgh
