#include "kgh/output.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "kgh/error.hpp"

namespace kgh {

std::string OutputHeader::render() const {
  std::string out;
  for (const auto& [k, v] : fields) out += "# " + k + ": " + v + "\n";
  return out;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable::CsvTable(OutputHeader header, std::vector<std::string> columns)
    : header_(std::move(header)), columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != columns_.size())
    throw Error(ErrorKind::contract_violation, "row width " + std::to_string(row.size()) + " does not match " +
                                                   std::to_string(columns_.size()) + " columns");
  rows_.push_back(row);
}

std::string CsvTable::render() const {
  std::string out = header_.render();
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
  out += "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
    out += "\n";
  }
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_atomic(path, render()); }

void write_atomic(const std::filesystem::path& path, std::string_view bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io_error, "cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorKind::io_error, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::io_error, "cannot rename '" + tmp.string() + "': " + ec.message());
}

}  // namespace kgh
