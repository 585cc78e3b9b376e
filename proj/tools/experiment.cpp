#include "experiment.hpp"

#include <cmath>
#include <numbers>

#include "kgh/corpus.hpp"
#include "kgh/error.hpp"
#include "kgh/fourier.hpp"

namespace kgh::cli {

GridSpec grid_from_config(const ExperimentConfig& cfg) {
  const int d = static_cast<int>(cfg.integer_or("d", 3));
  const int n = static_cast<int>(cfg.integer_or("n", 32));
  if (cfg.has("L") && cfg.has("m")) throw ConfigError("give either L or m, not both", 0);
  if (cfg.has("L")) return GridSpec(d, n, cfg.real("L"));
  return GridSpec::with_box_density(d, n, static_cast<int>(cfg.integer_or("m", 2)));
}

GridSpec parse_grid(std::string_view text) {
  ExperimentConfig cfg;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("grid entry '" + std::string(item) + "' is not key=value", 0);
    const std::string key(item.substr(0, eq));
    if (key != "d" && key != "n" && key != "L" && key != "m") throw ConfigError("unknown grid key '" + key + "'", 0);
    cfg.set(key, std::string(item.substr(eq + 1)));
    pos = comma + 1;
  }
  return grid_from_config(cfg);
}

HartreeKernel kernel_from_config(const ExperimentConfig& cfg, int dimension) {
  const Rational gamma = cfg.rational_or("gamma", Rational(5, 2));
  return HartreeKernel::riesz(to_double(gamma), dimension, cfg.real_or("zero_mode", 0.0));
}

std::uint64_t data_seed(const ExperimentConfig& cfg) { return static_cast<std::uint64_t>(cfg.integer_or("data.seed", 1)); }

std::pair<Field, Field> initial_data(const ExperimentConfig& cfg, const GridSpec& grid) {
  const std::string kind = cfg.text_or("data.kind", "corpus");
  const double amplitude = cfg.real_or("data.amplitude", 1.0);
  if (kind == "zero") return {Field(grid), Field(grid)};
  if (kind == "corpus") {
    CorpusSpec spec;
    spec.seed = data_seed(cfg);
    spec.count = 2;
    spec.alpha = cfg.real_or("data.envelope", 2.2);
    spec.amplitude = amplitude;
    spec.band = static_cast<int>(cfg.integer_or("data.band", 0));
    auto fields = generate_corpus(spec, grid);
    const Complex velocity(cfg.real_or("data.velocity", 1.0), 0.0);
    return {std::move(fields[0]), bessel_power(fields[1], 1.0) * velocity};
  }
  if (kind == "gaussian") {
    const double w = cfg.real_or("data.width", 1.0);
    const double c = 0.5 * grid.period();
    Field f = Field::from_function(grid, [&](const Vec3& x) {
      double r2 = 0.0;
      for (int a = 0; a < grid.dimension(); ++a) r2 += (x[a] - c) * (x[a] - c);
      return Complex(amplitude * std::exp(-0.5 * r2 / (w * w)), 0.0);
    });
    return {std::move(f), Field(grid)};
  }
  if (kind == "plane_wave") {
    const auto band = cfg.integer_or("data.band", 1);
    if (band < 1) throw ConfigError("plane_wave needs data.band >= 1", 0);
    const double k = 2 * std::numbers::pi * static_cast<double>(band) / grid.period();
    Field f = Field::from_function(grid, [&](const Vec3& x) { return Complex(amplitude * std::cos(k * x[0]), 0.0); });
    return {std::move(f), Field(grid)};
  }
  throw ConfigError("unknown data.kind '" + kind + "'", 0);
}

OutputHeader make_header(std::string_view command, const ExperimentConfig& cfg) {
  OutputHeader h;
  h.add("command", std::string(command));
  h.add("config_hash", cfg.hash());
  h.add("seed", std::to_string(data_seed(cfg)));
  h.add("tool_version", tool_version);
  h.add("generator", corpus_generator);
  for (const auto& [key, value] : cfg.entries()) h.add("config." + key, value);
  return h;
}

}  // namespace kgh::cli
