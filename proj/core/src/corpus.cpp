#include "kgh/corpus.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "kgh/error.hpp"
#include "kgh/norms.hpp"

namespace kgh {

namespace {

// 53-bit uniform on [0,1); spelled out so the stream does not depend on the
// standard library's distribution implementation.
double uniform(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<Field> generate_corpus(const CorpusSpec& spec, const GridSpec& grid) {
  if (spec.count < 0) throw Error(ErrorKind::invalid_parameter, "corpus count must be >= 0");
  if (!(spec.amplitude >= 0.0) || !std::isfinite(spec.alpha))
    throw Error(ErrorKind::invalid_parameter, "corpus amplitude must be >= 0 and alpha finite");
  const int band = spec.band == 0 ? grid.points() / 3 : spec.band;
  if (band < 0 || band >= grid.points() / 2)
    throw Error(ErrorKind::invalid_parameter, "corpus band must lie below n/2");

  std::mt19937_64 eng(spec.seed);
  std::vector<Field> out;
  out.reserve(spec.count);
  const int d = grid.dimension();
  for (int c = 0; c < spec.count; ++c) {
    Field f(grid, Representation::frequency);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto k = grid.lattice(i);
      bool inside = true;
      for (int a = 0; a < d; ++a) inside = inside && std::abs(k[a]) <= band;
      // Draw for every mode so the stream layout is independent of the band.
      const double phase = 2.0 * std::numbers::pi * uniform(eng);
      if (!inside) continue;
      const double envelope = std::pow(1.0 + grid.frequency_norm_sq(i), -0.5 * spec.alpha);
      f[i] = std::polar(envelope, phase);
    }
    if (spec.real) {
      // Keep the mode of each ±k pair that comes first in storage order and
      // mirror it; self-conjugate modes keep their real part.
      for (std::size_t i = 0; i < grid.size(); ++i) {
        auto k = grid.lattice(i);
        std::array<int, 3> mirror{0, 0, 0};
        for (int a = 0; a < d; ++a) mirror[a] = grid.storage_index(-k[a]);
        const std::size_t j = grid.flatten(mirror);
        if (j == i) f[i] = {f[i].real(), 0.0};
        else if (j > i) f[j] = std::conj(f[i]);
      }
    }
    const double norm = sobolev_norm(f, 0.0);
    if (norm > 0.0) f *= spec.amplitude / norm;
    out.push_back(f.to_physical());
    if (spec.real)
      for (auto& v : out.back().values()) v = {v.real(), 0.0};
  }
  return out;
}

}  // namespace kgh
