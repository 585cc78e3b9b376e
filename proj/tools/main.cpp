#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "experiment.hpp"
#include "kgh/config.hpp"
#include "kgh/corpus.hpp"
#include "kgh/error.hpp"
#include "kgh/exponents.hpp"
#include "kgh/gwp.hpp"
#include "kgh/modulation.hpp"
#include "kgh/norms.hpp"
#include "kgh/output.hpp"
#include "kgh/snapshot.hpp"
#include "kgh/solver.hpp"
#include "kgh/split.hpp"
#include "verify.hpp"

namespace fs = std::filesystem;
using namespace kgh;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, unstable = 3 };

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string hex_hash(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int run_exponents(const std::string& gamma, const std::string& p) {
  const auto table = exponent_table(parse_rational(gamma), parse_rational(p));
  for (const auto& e : table.entries()) {
    if (e.value)
      std::cout << e.name << " = " << format_rational(*e.value) << " (" << decimal(to_double(*e.value)) << ")\n";
    else
      std::cout << e.name << " = undefined\n";
  }
  return ok;
}

// "4/3" or a decimal.
double parse_exponent(const std::string& text) {
  return text.find('/') != std::string::npos ? to_double(parse_rational(text)) : parse_real(text);
}

int run_norms(const std::string& path, const std::string& kind, const std::string& p_text, const std::string& q_text,
              const std::string& s_text, double width) {
  const Field f = read_snapshot(path).field;
  const double p = parse_exponent(p_text), q = parse_exponent(q_text), s = parse_exponent(s_text);
  double value = 0.0;
  if (kind == "modulation") {
    value = modulation_norm(f, {p, q, s});
  } else if (kind == "stft") {
    value = stft_norm(f, {p, q, s}, gaussian_window(f.spec(), width));
  } else if (kind == "lebesgue") {
    value = lebesgue_norm(f, p);
  } else if (kind == "sobolev") {
    value = sobolev_norm(f, s);
  } else {
    throw Error(ErrorKind::invalid_parameter, "unknown norm kind '" + kind + "'");
  }
  std::cout << format_double(value) << "\n";
  return ok;
}

int run_split(const std::string& path, double N, const std::string& gamma, const std::string& p, double regularity,
              const fs::path& out) {
  const Snapshot snap = read_snapshot(path);
  const auto table = exponent_table(parse_rational(gamma), parse_rational(p));
  const SplitResult r = high_low_split(snap.field, N, table, regularity);
  fs::create_directories(out);
  write_snapshot(out / "low.snap", r.low.to_physical(), snap.t, snap.gamma);
  write_snapshot(out / "high.snap", r.high.to_physical(), snap.t, snap.gamma);
  std::cout << "R=" << format_double(r.radius) << " low_H1=" << format_double(sobolev_norm(r.low, 1.0))
            << " high_M=" << format_double(modulation_norm(r.high, split_params(table, regularity))) << "\n";
  return ok;
}

int run_verify(const std::vector<std::string>& checks, const std::optional<std::string>& grid_text,
               std::uint64_t seed, const fs::path& out) {
  std::optional<GridSpec> grid;
  if (grid_text) grid = cli::parse_grid(*grid_text);
  fs::create_directories(out);
  bool all = true;
  for (const auto& name : checks) {
    OutputHeader header;
    header.add("command", "verify");
    header.add("check", name);
    header.add("grid", grid_text.value_or("default"));
    header.add("config_hash", hex_hash(fnv1a("verify|" + name + "|" + grid_text.value_or("default") + "|" +
                                                       std::to_string(seed))));
    header.add("seed", std::to_string(seed));
    header.add("tool_version", tool_version);
    header.add("generator", corpus_generator);
    const auto outcome = cli::run_check(name, grid, seed, header);
    outcome.table.write(out / ("verify_" + name + ".csv"));
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << ": " << outcome.detail << "\n";
    all = all && outcome.pass;
  }
  return all ? ok : check_failed;
}

void apply_overrides(ExperimentConfig& cfg, const std::optional<std::string>& p,
                     const std::optional<std::string>& schedule) {
  if (p) cfg.set("p", *p);
  if (schedule) cfg.set("N_schedule", *schedule);
}

int run_simulate(const std::string& config_path, const fs::path& out) {
  const ExperimentConfig cfg = ExperimentConfig::load(config_path);
  if (cfg.text_or("scheme", "lawson-rk4") != "lawson-rk4")
    throw ConfigError("unsupported scheme '" + cfg.raw("scheme") + "'", 0);
  const GridSpec grid = cli::grid_from_config(cfg);
  const HartreeKernel kernel = cli::kernel_from_config(cfg, grid.dimension());
  const auto [f, g] = cli::initial_data(cfg, grid);

  std::optional<ExponentTable> table;
  std::optional<FirstOrderState> high;
  if (cfg.has("split_N")) {
    table = exponent_table(cfg.rational_or("gamma", Rational(5, 2)), cfg.rational_or("p", Rational(11, 5)));
    high = split_data(f, g, cfg.real("split_N"), *table).high_state();
  }

  EvolveOptions opts;
  opts.T = cfg.real_or("T", 1.0);
  opts.dt = cfg.real_or("dt", 1e-3);
  opts.sample_stride = static_cast<std::size_t>(cfg.integer_or("sample_stride", 10));
  opts.keep_states = false;
  opts.dealias = cfg.integer_or("dealias", 1) != 0;
  const auto snapshot_every = cfg.integer_or("snapshot_every", 0);

  fs::create_directories(out);
  CsvTable diag(cli::make_header("simulate", cfg), {"t", "E", "Px", "Py", "Pz", "H", "I", "vtilde_H1", "witness"});
  std::int64_t sample = 0;
  opts.on_sample = [&](const FirstOrderState& s) {
    const auto rec = diagnostics(s, kernel);
    double I = rec.hamiltonian, vt = sobolev_norm(s.v, 1.0), witness = vt;
    if (high) {
      const Field v_tilde = vtilde(s, *high);
      I = hamiltonian(v_tilde, kernel);
      vt = sobolev_norm(v_tilde, 1.0);
      witness = sumspace_witness_norm(s, *high, *table);
    }
    diag.add_row({s.t, rec.energy, rec.momentum[0], rec.momentum[1], rec.momentum[2], rec.hamiltonian, I, vt, witness});
    if (snapshot_every > 0 && sample % snapshot_every == 0) {
      char name[32];
      std::snprintf(name, sizeof name, "snap_%06lld.snap", static_cast<long long>(sample));
      write_snapshot(out / name, from_first_order(s).position, s.t, kernel.gamma);
    }
    ++sample;
  };
  try {
    evolve(f, g, kernel, opts);
  } catch (const Instability&) {
    diag.write(out / "diag.csv");
    throw;
  }
  diag.write(out / "diag.csv");
  std::cout << "wrote " << (out / "diag.csv").string() << " (" << diag.rows() << " samples)\n";
  return ok;
}

int run_gwp(const std::string& config_path, const std::optional<std::string>& p,
            const std::optional<std::string>& schedule, const fs::path& out) {
  ExperimentConfig cfg = ExperimentConfig::load(config_path);
  apply_overrides(cfg, p, schedule);
  const GridSpec grid = cli::grid_from_config(cfg);
  const auto [f, g] = cli::initial_data(cfg, grid);

  GwpOptions opts;
  opts.gamma = cfg.rational_or("gamma", opts.gamma);
  opts.p = cfg.rational_or("p", opts.p);
  if (cfg.has("N_schedule")) opts.N_schedule = cfg.real_list("N_schedule");
  opts.T_max = cfg.real_or("T_max", opts.T_max);
  opts.dt = cfg.real_or("dt", opts.dt);
  opts.sample_stride = static_cast<std::size_t>(cfg.integer_or("sample_stride", 25));
  opts.fit_start = cfg.real_or("fit_start", opts.fit_start);
  opts.zero_mode = cfg.real_or("zero_mode", opts.zero_mode);
  const GwpReport report = gwp_experiment(f, g, opts);

  fs::create_directories(out);
  OutputHeader header = cli::make_header("gwp", cfg);
  header.add("i0_slope", format_double(report.i0_slope));
  header.add("window_slope", format_double(report.window_slope));
  header.add("horizon_growth_slope", format_double(report.growth_slope));
  std::string censored;
  for (const auto& row : report.rows) censored += std::string(censored.empty() ? "" : ",") + (row.censored ? "1" : "0");
  // T_certified equals T_max on censored rows: I(t) never exceeded 2 I(0).
  header.add("censored", censored);
  CsvTable csv(header, {"N", "theta", "I0", "maxI_ratio", "T_certified", "growth_slope"});
  for (const auto& row : report.rows)
    csv.add_row({row.N, row.theta, row.I0, row.max_I_ratio, row.T_certified, row.growth_slope});
  csv.write(out / "gwp_report.csv");
  for (const auto& row : report.rows)
    std::cout << "N=" << row.N << " T_certified=" << format_double(row.T_certified)
              << (row.censored ? " (censored)" : "") << " I0=" << format_double(row.I0) << "\n";
  std::cout << "i0_slope=" << format_double(report.i0_slope) << " growth_slope=" << format_double(report.growth_slope)
            << "\n";
  return ok;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::instability:
    case ErrorKind::non_convergence:
    case ErrorKind::no_contraction:
      return unstable;
    default:
      return usage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Klein-Gordon-Hartree spectral toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);

  std::string config_path, out_dir = ".";
  std::optional<std::string> p_flag, schedule_flag;

  auto* simulate = app.add_subcommand("simulate", "evolve initial data and write diag.csv");
  simulate->add_option("--config", config_path, "config file")->required();
  simulate->add_option("--out", out_dir, "output directory");

  auto* gwp = app.add_subcommand("gwp", "high-low global well-posedness experiment");
  gwp->add_option("--config", config_path, "config file")->required();
  gwp->add_option("--p", p_flag, "data regularity index (overrides config)");
  gwp->add_option("--N-schedule", schedule_flag, "comma separated split scales (overrides config)");
  gwp->add_option("--out", out_dir, "output directory");

  std::string snapshot, kind = "modulation";
  std::string p_norm = "2", q_norm = "2", s_norm = "0";
  double width = 1.0;
  auto* norms = app.add_subcommand("norms", "norm of a snapshot field");
  norms->add_option("snapshot", snapshot)->required();
  norms->add_option("--kind", kind)->check(CLI::IsMember({"modulation", "stft", "lebesgue", "sobolev"}));
  norms->add_option("--p", p_norm);
  norms->add_option("--q", q_norm);
  norms->add_option("--s", s_norm);
  norms->add_option("--window-width", width, "STFT Gaussian window width");

  double N = 0.0, regularity = 1.0;
  std::string gamma_text = "5/2", p_text = "11/5";
  auto* split = app.add_subcommand("split", "high-low split of a snapshot field");
  split->add_option("snapshot", snapshot)->required();
  split->add_option("--N", N)->required();
  split->add_option("--gamma", gamma_text);
  split->add_option("--p", p_text);
  split->add_option("--regularity", regularity);
  split->add_option("--out", out_dir);

  std::vector<std::string> checks;
  std::optional<std::string> grid_text;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "property checks with PASS/FAIL lines");
  verify->add_option("--check", checks)->required()->check(CLI::IsMember(cli::verify_checks));
  verify->add_option("--grid", grid_text, "e.g. d=1,n=64,L=4pi");
  verify->add_option("--seed", seed);
  verify->add_option("--out", out_dir);

  auto* exponents = app.add_subcommand("exponents", "exact exponent table");
  exponents->add_option("--gamma", gamma_text);
  exponents->add_option("--p", p_text);

  if (argc > 1 && argv[1][0] != '-') {
    const std::string first = argv[1];
    bool known = false;
    for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == first;
    if (!known) {
      std::cerr << "kgh: unknown subcommand '" << first << "'\n";
      return usage;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*simulate) return run_simulate(config_path, out_dir);
    if (*gwp) return run_gwp(config_path, p_flag, schedule_flag, out_dir);
    if (*norms) return run_norms(snapshot, kind, p_norm, q_norm, s_norm, width);
    if (*split) return run_split(snapshot, N, gamma_text, p_text, regularity, out_dir);
    if (*verify) return run_verify(checks, grid_text, seed, out_dir);
    if (*exponents) return run_exponents(gamma_text, p_text);
  } catch (const Error& e) {
    std::cerr << "kgh: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "kgh: " << e.what() << "\n";
    return usage;
  }
  return usage;
}
