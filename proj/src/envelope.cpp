#include "parabolab/envelope.hpp"

#include <cmath>
#include <stdexcept>

#include "parabolab/parallel.hpp"

namespace parabolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LineScratch {
  std::vector<double> f;
  std::vector<std::size_t> src;
  std::vector<int> v;
  std::vector<double> z;
};

// 1-D lower envelope of parabolas c (p - q)^2 + f[q].
void envelope_1d(int len, double c, const double* f, const std::size_t* src, double* out_val,
                 std::size_t* out_src, LineScratch& s) {
  s.v.resize(len);
  s.z.resize(len + 1);
  int k = -1;
  for (int q = 0; q < len; ++q) {
    if (!(f[q] < kInf)) continue;  // +inf and NaN never enter the envelope
    const double fq = f[q] + c * q * q;
    while (k >= 0) {
      const int vk = s.v[k];
      const double sq = (fq - (f[vk] + c * vk * vk)) / (2.0 * c * (q - vk));
      if (sq <= s.z[k]) {
        --k;
        continue;
      }
      ++k;
      s.v[k] = q;
      s.z[k] = sq;
      break;
    }
    if (k < 0) {
      k = 0;
      s.v[0] = q;
      s.z[0] = -kInf;
    }
  }
  if (k < 0) {
    for (int p = 0; p < len; ++p) {
      out_val[p] = kInf;
      out_src[p] = kNoSource;
    }
    return;
  }
  s.z[k + 1] = kInf;
  int j = 0;
  for (int p = 0; p < len; ++p) {
    while (s.z[j + 1] < p) ++j;
    const int q = s.v[j];
    const double d = p - q;
    out_val[p] = f[q] + c * d * d;
    out_src[p] = src[q];
  }
}

}  // namespace

EnvelopeResult min_convolve(const GridSpec& grid, std::span<const double> f, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("min_convolve: kappa must be positive and finite");
  if (f.size() != grid.size()) throw std::invalid_argument("min_convolve: size mismatch");
  const int n = grid.ndim();
  const int m = grid.cells_per_axis();
  const double h = grid.spacing();
  const double c = 0.5 * kappa * h * h;

  EnvelopeResult r;
  r.value.assign(f.begin(), f.end());
  r.source.resize(grid.size());
  for (std::size_t i = 0; i < r.source.size(); ++i)
    r.source[i] = (f[i] < kInf) ? i : kNoSource;

  for (int axis = n - 1; axis >= 0; --axis) {
    const std::size_t stride = grid.stride(axis);
    const std::size_t lines = grid.size() / static_cast<std::size_t>(m);
    const std::size_t outer_stride = stride * static_cast<std::size_t>(m);
    std::vector<double> next_val(grid.size());
    std::vector<std::size_t> next_src(grid.size());
    parallel_for(lines, [&](std::size_t line) {
      // line -> start index: decompose into (outer, inner) around the axis
      const std::size_t outer = line / stride;
      const std::size_t inner = line % stride;
      const std::size_t start = outer * outer_stride + inner;
      thread_local LineScratch s;
      s.f.resize(m);
      s.src.resize(m);
      std::vector<double> ov(m);
      std::vector<std::size_t> os(m);
      for (int i = 0; i < m; ++i) {
        s.f[i] = r.value[start + i * stride];
        s.src[i] = r.source[start + i * stride];
      }
      envelope_1d(m, c, s.f.data(), s.src.data(), ov.data(), os.data(), s);
      for (int i = 0; i < m; ++i) {
        next_val[start + i * stride] = ov[i];
        next_src[start + i * stride] = os[i];
      }
    });
    r.value.swap(next_val);
    r.source.swap(next_src);
  }
  return r;
}

EnvelopeResult min_convolve_brute(const GridSpec& grid, std::span<const double> f, double kappa,
                                  const std::vector<std::uint8_t>& want) {
  const int n = grid.ndim();
  const double h = grid.spacing();
  const double c = 0.5 * kappa * h * h;
  EnvelopeResult r;
  r.value.assign(grid.size(), kInf);
  r.source.assign(grid.size(), kNoSource);
  std::vector<std::size_t> cand;
  for (std::size_t x = 0; x < grid.size(); ++x)
    if (f[x] < kInf) cand.push_back(x);
  for (std::size_t y = 0; y < grid.size(); ++y) {
    if (!want[y]) continue;
    const Index iy = grid.multi_index(y);
    for (std::size_t x : cand) {
      const Index ix = grid.multi_index(x);
      double d2 = 0.0;
      for (int d = 0; d < n; ++d) d2 += double(ix[d] - iy[d]) * double(ix[d] - iy[d]);
      const double v = f[x] + c * d2;
      if (v < r.value[y]) {
        r.value[y] = v;
        r.source[y] = x;
      }
    }
  }
  return r;
}

}  // namespace parabolab
