#include "kgh/snapshot.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <cstring>
#include <fstream>
#include <sstream>

#include "kgh/error.hpp"
#include "kgh/output.hpp"

static_assert(std::endian::native == std::endian::little, "snapshot format assumes a little-endian host");

namespace kgh {

namespace {

constexpr char magic[4] = {'M', 'K', 'G', 'H'};
constexpr std::uint32_t version = 1;

template <class T>
void put(std::string& out, const T& v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <class T>
T take(const std::string& in, std::size_t& pos, const std::filesystem::path& path) {
  if (pos + sizeof(T) > in.size()) throw Error(ErrorKind::io_error, "truncated snapshot '" + path.string() + "'");
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const Field& field, double t, std::optional<double> gamma) {
  const auto& spec = field.spec();
  std::string out(magic, 4);
  put(out, version);
  put(out, static_cast<std::uint32_t>(spec.dimension()));
  put(out, static_cast<std::uint32_t>(spec.points()));
  put(out, spec.period());
  put(out, gamma.value_or(std::numeric_limits<double>::quiet_NaN()));
  put(out, t);
  put(out, static_cast<std::uint8_t>(field.representation()));
  for (const auto& z : field.values()) {
    put(out, z.real());
    put(out, z.imag());
  }
  write_atomic(path, out);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_error, "cannot open snapshot '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  if (bytes.size() < 4 || std::memcmp(bytes.data(), magic, 4) != 0)
    throw Error(ErrorKind::io_error, "'" + path.string() + "' is not a snapshot");
  std::size_t pos = 4;
  if (take<std::uint32_t>(bytes, pos, path) != version)
    throw Error(ErrorKind::io_error, "unsupported snapshot version in '" + path.string() + "'");
  const auto d = take<std::uint32_t>(bytes, pos, path);
  const auto n = take<std::uint32_t>(bytes, pos, path);
  const auto L = take<double>(bytes, pos, path);
  const auto gamma = take<double>(bytes, pos, path);
  const auto t = take<double>(bytes, pos, path);
  const auto rep = take<std::uint8_t>(bytes, pos, path);
  if (rep > 1) throw Error(ErrorKind::io_error, "bad representation tag in '" + path.string() + "'");
  if (d < 1 || d > 3 || n > 4096) throw Error(ErrorKind::io_error, "implausible grid in '" + path.string() + "'");
  GridSpec spec(static_cast<int>(d), static_cast<int>(n), L);
  std::vector<Complex> values(spec.size());
  for (auto& z : values) {
    const double re = take<double>(bytes, pos, path);
    const double im = take<double>(bytes, pos, path);
    z = {re, im};
  }
  if (pos != bytes.size()) throw Error(ErrorKind::io_error, "trailing bytes in snapshot '" + path.string() + "'");
  Snapshot snap{Field(spec, std::move(values), static_cast<Representation>(rep)), t, std::nullopt};
  if (!std::isnan(gamma)) snap.gamma = gamma;
  return snap;
}

}  // namespace kgh
