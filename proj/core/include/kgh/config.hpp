#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgh/rational.hpp"

namespace kgh {

enum class ValueType { integer, real, rational, text, real_list };

struct ConfigKey {
  const char* name;
  ValueType type;
  const char* help;
};

// Every key understood by the tool surfaces.
std::span<const ConfigKey> config_keys();

// Flat `key = value` document. `#` starts a comment, blank lines are ignored,
// keys may appear once. Values are checked against the key's type at parse
// time; lengths accept a trailing `pi` ("4pi", "0.5pi", "pi").
class ExperimentConfig {
 public:
  ExperimentConfig() = default;

  static ExperimentConfig parse(std::string_view text);
  static ExperimentConfig load(const std::filesystem::path& path);

  // Entries in document order, one `key = value` line each.
  std::string serialize() const;
  // 64-bit FNV-1a of serialize(), as 16 hex digits.
  std::string hash() const;

  bool has(std::string_view key) const;
  void set(std::string_view key, std::string value);
  const std::string& raw(std::string_view key) const;

  double real(std::string_view key) const;
  double real_or(std::string_view key, double fallback) const;
  std::int64_t integer(std::string_view key) const;
  std::int64_t integer_or(std::string_view key, std::int64_t fallback) const;
  Rational rational(std::string_view key) const;
  Rational rational_or(std::string_view key, Rational fallback) const;
  std::string text_or(std::string_view key, std::string fallback) const;
  std::vector<double> real_list(std::string_view key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// "4pi" → 4π, "pi" → π, otherwise a plain decimal. Throws invalid_parameter.
double parse_real(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);

std::uint64_t fnv1a(std::string_view bytes) noexcept;

}  // namespace kgh
