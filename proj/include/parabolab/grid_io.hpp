#pragma once

#include <iosfwd>
#include <string>

#include "parabolab/grid.hpp"

namespace parabolab {

// GF01 layout, little-endian throughout:
//   bytes 0-3   magic "GF01"
//   u32         ndim
//   u32         cells_per_axis
//   f64         spacing
//   f64 x N     node values, row-major (axis 0 slowest), NaN off the mask

void write_gf01(std::ostream& out, const GridFunction& u);
void write_gf01(const std::string& path, const GridFunction& u);
/// Writes a 0/1 field for a cell set.
void write_gf01(const std::string& path, const CellSet& s);

/// Throws std::runtime_error on malformed input.
GridFunction read_gf01(std::istream& in);
GridFunction read_gf01(const std::string& path);
/// Reads a 0/1 field; any non-zero masked value counts as a member.
CellSet read_gf01_mask(const std::string& path);

}  // namespace parabolab
