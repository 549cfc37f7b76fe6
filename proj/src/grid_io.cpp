#include "parabolab/grid_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace parabolab {
namespace {

constexpr char kMagic[4] = {'G', 'F', '0', '1'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
    throw std::runtime_error("GF01: unexpected end of data");
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_gf01(std::ostream& out, const GridFunction& u) {
  const GridSpec& g = u.grid();
  out.write(kMagic, 4);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.ndim()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.cells_per_axis()));
  put_le<double>(out, g.spacing());
  for (std::size_t i = 0; i < g.size(); ++i)
    put_le<double>(out, g.in_ball(i) ? u[i] : std::numeric_limits<double>::quiet_NaN());
  if (!out) throw std::runtime_error("GF01: write failed");
}

void write_gf01(const std::string& path, const GridFunction& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("GF01: cannot open " + path + " for writing");
  write_gf01(out, u);
}

void write_gf01(const std::string& path, const CellSet& s) {
  std::vector<double> v(s.grid().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.contains(i) ? 1.0 : 0.0;
  write_gf01(path, GridFunction(s.grid_ptr(), std::move(v)));
}

GridFunction read_gf01(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("GF01: bad magic");
  const auto ndim = get_le<std::uint32_t>(in);
  const auto m = get_le<std::uint32_t>(in);
  const auto h = get_le<double>(in);
  if (ndim < 1 || ndim > 3) throw std::runtime_error("GF01: unsupported ndim");
  if (m < 3 || m % 2 == 0 || m > 100001) throw std::runtime_error("GF01: bad cells_per_axis");
  auto grid = build_ball_grid(static_cast<int>(ndim), static_cast<int>(m));
  if (std::abs(h - grid->spacing()) > 1e-12 * grid->spacing())
    throw std::runtime_error("GF01: spacing inconsistent with cells_per_axis");
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = get_le<double>(in);
    const bool finite = std::isfinite(v[i]);
    if (grid->in_ball(i) && !finite) throw std::runtime_error("GF01: non-finite value on a masked node");
    if (!grid->in_ball(i) && !std::isnan(v[i]))
      throw std::runtime_error("GF01: masked-out node must hold NaN");
  }
  return GridFunction(grid, std::move(v));
}

GridFunction read_gf01(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("GF01: cannot open " + path);
  return read_gf01(in);
}

CellSet read_gf01_mask(const std::string& path) {
  const GridFunction f = read_gf01(path);
  std::vector<std::uint8_t> m(f.grid().size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = f.grid().in_ball(i) && f[i] != 0.0;
  return CellSet(f.grid_ptr(), std::move(m));
}

}  // namespace parabolab
