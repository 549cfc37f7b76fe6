#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "parabolab/grid.hpp"

namespace parabolab {

inline constexpr std::size_t kNoSource = std::numeric_limits<std::size_t>::max();

struct EnvelopeResult {
  std::vector<double> value;        ///< over the whole box
  std::vector<std::size_t> source;  ///< realizing node, kNoSource if none
};

/// value[y] = min over box nodes x of f[x] + kappa/2 |x - y|^2.
///
/// Entries of f equal to +inf (or NaN) are skipped. One pass per axis of the
/// lower envelope of parabolas; axes are processed last to first and the
/// smallest index wins each 1-D tie, so exact ties resolve to the
/// lexicographically smallest source.
EnvelopeResult min_convolve(const GridSpec& grid, std::span<const double> f, double kappa);

/// O(N |V|) reference: same contract, candidates restricted to nodes with finite f,
/// outputs only at nodes where want[y] is set (others +inf / kNoSource).
EnvelopeResult min_convolve_brute(const GridSpec& grid, std::span<const double> f, double kappa,
                                  const std::vector<std::uint8_t>& want);

}  // namespace parabolab
