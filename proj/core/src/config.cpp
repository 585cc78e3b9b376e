#include "kgh/config.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kgh/error.hpp"

namespace kgh {

namespace {

constexpr std::array<ConfigKey, 24> keys{{
    {"gamma", ValueType::rational, "kernel exponent γ"},
    {"p", ValueType::rational, "data regularity index"},
    {"d", ValueType::integer, "dimension"},
    {"n", ValueType::integer, "grid points per axis"},
    {"L", ValueType::real, "period (accepts 4pi)"},
    {"m", ValueType::integer, "modes per unit box; sets L = 2πm"},
    {"dt", ValueType::real, "time step"},
    {"T", ValueType::real, "final time"},
    {"T_max", ValueType::real, "GWP horizon"},
    {"scheme", ValueType::text, "time integrator (lawson-rk4)"},
    {"sample_stride", ValueType::integer, "steps between diagnostics"},
    {"snapshot_every", ValueType::integer, "samples between snapshots (0 = none)"},
    {"zero_mode", ValueType::real, "V̂(0)"},
    {"dealias", ValueType::integer, "1 to apply the n/3 band mask"},
    {"split_N", ValueType::real, "split scale for I(t) and witness columns"},
    {"N_schedule", ValueType::real_list, "comma separated N values"},
    {"fit_start", ValueType::real, "first time used in growth fits"},
    {"data.kind", ValueType::text, "corpus | gaussian | plane_wave | zero"},
    {"data.amplitude", ValueType::real, "L² norm of u(0) (corpus) or peak amplitude"},
    {"data.seed", ValueType::integer, "corpus seed"},
    {"data.envelope", ValueType::real, "spectral decay α"},
    {"data.band", ValueType::integer, "corpus band (0 = n/3)"},
    {"data.velocity", ValueType::real, "relative size of u_t(0) (corpus)"},
    {"data.width", ValueType::real, "gaussian width"},
}};

const ConfigKey* find_key(std::string_view name) {
  for (const auto& k : keys)
    if (name == k.name) return &k;
  return nullptr;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_plain(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw Error(ErrorKind::invalid_parameter, "empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
    throw Error(ErrorKind::invalid_parameter, "not a number: '" + s + "'");
  return v;
}

void check_value(const ConfigKey& key, std::string_view value) {
  switch (key.type) {
    case ValueType::integer: {
      std::int64_t v = 0;
      const auto r = std::from_chars(value.data(), value.data() + value.size(), v);
      if (r.ec != std::errc() || r.ptr != value.data() + value.size())
        throw Error(ErrorKind::invalid_parameter, "not an integer: '" + std::string(value) + "'");
      break;
    }
    case ValueType::real: parse_real(value); break;
    case ValueType::rational: parse_rational(value); break;
    case ValueType::real_list: parse_real_list(value); break;
    case ValueType::text:
      if (value.empty()) throw Error(ErrorKind::invalid_parameter, "empty value");
      break;
  }
}

}  // namespace

std::span<const ConfigKey> config_keys() { return keys; }

double parse_real(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
    auto head = trim(text.substr(0, text.size() - 2));
    if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
    return (head.empty() ? 1.0 : parse_plain(head)) * std::numbers::pi;
  }
  return parse_plain(text);
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_real(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig cfg;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const ConfigKey* spec = find_key(key);
    if (!spec) throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'", line_no);
    if (cfg.has(key))
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'", line_no);
    try {
      check_value(*spec, value);
    } catch (const Error& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + std::string(key) + ": " + e.what(), line_no);
    }
    cfg.entries_.emplace_back(std::string(key), std::string(value));
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_error, "cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string ExperimentConfig::serialize() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

std::string ExperimentConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(serialize())));
  return buf;
}

bool ExperimentConfig::has(std::string_view key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

void ExperimentConfig::set(std::string_view key, std::string value) {
  const ConfigKey* spec = find_key(key);
  if (!spec) throw ConfigError("unknown key '" + std::string(key) + "'", 0);
  try {
    check_value(*spec, value);
  } catch (const Error& e) {
    throw ConfigError(std::string(key) + ": " + e.what(), 0);
  }
  for (auto& e : entries_)
    if (e.first == key) {
      e.second = std::move(value);
      return;
    }
  entries_.emplace_back(std::string(key), std::move(value));
}

const std::string& ExperimentConfig::raw(std::string_view key) const {
  for (const auto& e : entries_)
    if (e.first == key) return e.second;
  throw ConfigError("missing required key '" + std::string(key) + "'", 0);
}

double ExperimentConfig::real(std::string_view key) const { return parse_real(raw(key)); }
double ExperimentConfig::real_or(std::string_view key, double fallback) const {
  return has(key) ? real(key) : fallback;
}
std::int64_t ExperimentConfig::integer(std::string_view key) const {
  const auto& s = raw(key);
  std::int64_t v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}
std::int64_t ExperimentConfig::integer_or(std::string_view key, std::int64_t fallback) const {
  return has(key) ? integer(key) : fallback;
}
Rational ExperimentConfig::rational(std::string_view key) const { return parse_rational(raw(key)); }
Rational ExperimentConfig::rational_or(std::string_view key, Rational fallback) const {
  return has(key) ? rational(key) : fallback;
}
std::string ExperimentConfig::text_or(std::string_view key, std::string fallback) const {
  return has(key) ? raw(key) : fallback;
}
std::vector<double> ExperimentConfig::real_list(std::string_view key) const { return parse_real_list(raw(key)); }

}  // namespace kgh
