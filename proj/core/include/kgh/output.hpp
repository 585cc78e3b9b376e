#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgh {

inline constexpr const char* tool_version = "1.0.0";

// Metadata written as leading `# key: value` lines.
struct OutputHeader {
  std::vector<std::pair<std::string, std::string>> fields;

  void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
  std::string render() const;
};

// Shortest round-tripping decimal for a double ("%.17g").
std::string format_double(double x);

class CsvTable {
 public:
  CsvTable(OutputHeader header, std::vector<std::string> columns);

  void add_row(const std::vector<double>& row);
  std::string render() const;
  void write(const std::filesystem::path& path) const;

  std::size_t rows() const noexcept { return rows_.size(); }

 private:
  OutputHeader header_;
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace kgh
