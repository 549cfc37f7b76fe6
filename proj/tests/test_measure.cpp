#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "parabolab/catalog.hpp"
#include "parabolab/measure.hpp"

using namespace parabolab;

namespace {

// Lower contact by direct minimization, independent of the separable transform:
// m(y) = min_z u(z) + k/2 |z - y|^2 over all masked pairs, then x is a member
// iff u(x) + k/2 |x - y|^2 <= m(y) + tol for some vertex y.
std::vector<std::uint8_t> brute_contact(const GridFunction& u, double kappa, double tol) {
  const GridSpec& g = u.grid();
  std::vector<std::size_t> nodes;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.in_ball(i)) {
      nodes.push_back(i);
      pts.push_back(g.coords(i));
    }
  const std::size_t N = nodes.size();
  auto d2 = [&](std::size_t a, std::size_t b) {
    double s = 0;
    for (int d = 0; d < g.ndim(); ++d) s += (pts[a][d] - pts[b][d]) * (pts[a][d] - pts[b][d]);
    return s;
  };
  std::vector<double> m(N, 1e300);
  for (std::size_t y = 0; y < N; ++y)
    for (std::size_t z = 0; z < N; ++z) m[y] = std::min(m[y], u[nodes[z]] + 0.5 * kappa * d2(z, y));
  const double guard = tol + 1e-11 * (u.sup_norm() + 2.0 * kappa);
  std::vector<std::uint8_t> in(g.size(), 0);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y)
      if (u[nodes[x]] + 0.5 * kappa * d2(x, y) - m[y] <= guard) {
        in[nodes[x]] = 1;
        break;
      }
  return in;
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("distribution measure") {
  auto g = build_ball_grid(2, 33);
  const auto c = GridFunction::constant(g, 2.0);
  const std::vector<double> t{1.0, 2.0, 3.0};
  const auto d = distribution_measure(c, t);
  CHECK(d[0] == ball_measure(*g));
  CHECK(d[1] == 0.0);
  CHECK(d[2] == 0.0);
  CHECK_THROWS_AS(distribution_measure(GridFunction::constant(g, -1.0), t), std::invalid_argument);
}

TEST_CASE("dyadic constant frozen values") {
  // max((eta M)^p, M^p / (eta^p (M^p - 1))) with eta = sqrt 2, M = 2
  CHECK(dyadic_constant(default_dyadic(2, 1.0)) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(dyadic_constant(default_dyadic(2, 0.5)) ==
        doctest::Approx(std::sqrt(2.0) / (std::pow(2.0, 0.25) * (std::sqrt(2.0) - 1.0))).epsilon(1e-14));
  CHECK(dyadic_constant(default_dyadic(2, 0.3)) ==
        doctest::Approx(std::pow(2.0, 0.3) / (std::pow(2.0, 0.15) * (std::pow(2.0, 0.3) - 1.0))).epsilon(1e-14));
  CHECK_THROWS_AS(dyadic_constant({1.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("dyadic bound by hand on a two-valued field") {
  auto g = build_ball_grid(2, 65);
  // g = 10 on the left half, 0.5 elsewhere
  const auto f = sample_function([](const Point& x) { return x[0] < 0 ? 10.0 : 0.5; }, g);
  const auto par = default_dyadic(2, 1.0);
  const auto r = dyadic_norm(f, par);
  std::size_t left = 0, right = 0;
  for (std::size_t i = 0; i < g->size(); ++i)
    if (g->in_ball(i)) (g->coords(i)[0] < 0 ? left : right)++;
  const double h2 = g->cell_volume();
  CHECK(r.norm_pow == doctest::Approx(h2 * (10.0 * left + 0.5 * right)));
  // levels eta M^k = 2.83, 5.66 are exceeded by the left half; 11.3 is not
  CHECK(r.levels == 2);
  CHECK(r.s == doctest::Approx(h2 * left * (2.0 + 4.0)));
  CHECK(r.holds());
}

TEST_CASE("decay profile matches the brute-force contact oracle for the cone") {
  auto g = build_ball_grid(2, 65);
  const auto u = make_case(parse_case("cone"), 2).sample_u(g);
  const Ladder ladder{1.0, 2.0, 5};
  const auto rep = decay_profile(u, Direction::upper, ladder);
  const auto neg = u.negated();
  std::vector<double> lx, ly;
  for (const auto& s : rep.steps) {
    const auto in = brute_contact(neg, s.t, default_contact_tol(*g, s.t));
    std::size_t out = 0;
    for (std::size_t i = 0; i < g->size(); ++i) out += g->in_ball(i) && !in[i];
    CHECK(s.measure_upper == doctest::Approx(out * g->cell_volume()).epsilon(1e-12));
    if (s.k >= 1 && out > 0) {
      lx.push_back(std::log(s.t));
      ly.push_back(std::log(out * g->cell_volume()));
    }
  }
  const double sigma = -lsq_slope(lx, ly);
  // the [1.6, 2.4] window is for h = 1/128; at this spacing only the fit itself is compared
  CHECK(rep.sigma == doctest::Approx(sigma).epsilon(1e-9));
}

TEST_CASE("quadratic lower decay follows the closed form") {
  // contact set {|x| <= t / (1 + t)}: the vertex x (1 + 1/t) must stay in the closed ball
  auto g = build_ball_grid(2, 257);
  const auto u = make_case(parse_case("quadratic:1"), 2).sample_u(g);
  const auto rep = decay_profile(u, Direction::lower, {1.0, 2.0, 5});
  std::vector<double> lx, ly;
  for (const auto& s : rep.steps) {
    const double rho = s.t / (1.0 + s.t);
    const double exact = std::numbers::pi * (1.0 - rho * rho);
    CHECK(std::abs(s.measure_lower - exact) <= 8.0 * g->spacing());
    if (s.k >= 1) {
      lx.push_back(std::log(s.t));
      ly.push_back(std::log(exact));
    }
  }
  // closed-form fit over this finite ladder is 0.81; the grid loses the thinnest strips at t = 32
  CHECK(std::abs(rep.sigma - (-lsq_slope(lx, ly))) < 0.15);
  CHECK(rep.sigma >= 0.8);
  CHECK(rep.sigma <= 1.2);
  CHECK_THROWS_AS(decay_profile(u, Direction::lower, {0.5, 2.0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(decay_profile(u, Direction::lower, {1.0, 2.0, 2}), std::invalid_argument);
}

TEST_CASE("decay profile saturates on a constant field") {
  auto g = build_ball_grid(2, 33);
  const auto rep = decay_profile(GridFunction::constant(g, 0.3), Direction::both, {1.0, 2.0, 4});
  CHECK(rep.saturated);
  CHECK(std::isinf(rep.sigma));
}

TEST_CASE("hessian routes") {
  auto g = build_ball_grid(2, 65);
  for (const char* name : {"quadratic:1", "bump", "radial_plaplace:1.5"}) {
    const auto u = make_case(parse_case(name), 2).sample_u(g);
    const auto cmp = compare_routes(u, 0.3);
    CHECK(cmp.consistent);
    CHECK(cmp.direct > 0.0);
  }
  // |D2 u|_F = sqrt(2) a for u = a |x|^2 / 2, so the direct route is sqrt(2) a |B|^{1/delta} on valid nodes
  const auto q = make_case(parse_case("quadratic:3"), 2).sample_u(g);
  const auto d = fd_derivatives(q);
  std::size_t valid = 0;
  for (auto v : d.valid) valid += v;
  const double delta = 0.5;
  CHECK(hessian_norm_direct(q, delta) ==
        doctest::Approx(3.0 * std::sqrt(2.0) * std::pow(valid * g->cell_volume(), 1.0 / delta)).epsilon(1e-10));
  CHECK_THROWS_AS(hessian_norm_direct(q, 0.0), std::invalid_argument);
}

TEST_CASE("inclusion of the large-hessian set") {
  auto g = build_ball_grid(2, 65);
  for (const char* name : {"quadratic:1", "bump", "radial_plaplace:1.8"})
    for (int k = 0; k <= 5; ++k) CHECK(inclusion_check(make_case(parse_case(name), 2).sample_u(g), std::pow(2.0, k)).violations == 0);
  // a = 3: every interior node has |D2 u|_F = 3 sqrt 2 > sqrt 2 t for t = 1
  const auto r = inclusion_check(make_case(parse_case("quadratic:3"), 2).sample_u(g), 1.0);
  CHECK(r.large_hessian > 0);
  CHECK(r.violations == 0);
}

TEST_CASE("normalization bounds hold exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.1, 1000.0);
  auto g = build_ball_grid(2, 33);
  for (int trial = 0; trial < 50; ++trial) {
    const double cu = U(rng), cf = U(rng);
    const auto u = GridFunction::constant(g, cu);
    const auto f = GridFunction::constant(g, cf);
    const auto r = normalize_and_ratio(u, f, SingularExponent(std::fmod(trial * 0.13, 0.9)), 1e-12, 0.3);
    CHECK(r.u_scaled_sup <= 1.0 / 16.0);
    CHECK(r.f_scaled_sup <= 1.0);
    CHECK(r.hypothesis_ok);
  }
  const auto z = GridFunction::constant(g, 0.0);
  CHECK_THROWS_AS(normalize_and_ratio(z, z, SingularExponent(0.0), 0.0, 0.3), std::invalid_argument);
}
