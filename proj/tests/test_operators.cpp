#include <doctest.h>

#include <cmath>
#include <random>

#include "parabolab/catalog.hpp"
#include "parabolab/operators.hpp"

using namespace parabolab;

namespace {

SymMatrix random_sym(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::array<double, 9> a{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[3 * i + j] = N(rng);
  return SymMatrix(n, a);
}

}  // namespace

TEST_CASE("pucci examples") {
  const Ellipticity ell(1.0, 2.0);
  CHECK(pucci_minus(SymMatrix::identity(2), ell) == 2.0);
  CHECK(pucci_plus(SymMatrix::identity(2), ell) == 4.0);
  const SymMatrix X = SymMatrix::diagonal(2, Point{1, -1, 0});
  CHECK(pucci_plus(X, ell) == doctest::Approx(1.0));
  CHECK(pucci_minus(X, ell) == doctest::Approx(-1.0));
  CHECK(pucci_plus(SymMatrix(3), ell) == 0.0);
  CHECK(pucci_minus(SymMatrix(3), ell) == 0.0);
  CHECK_THROWS_AS(Ellipticity(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Ellipticity(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SingularExponent(1.0), std::invalid_argument);
  CHECK_THROWS_AS(SingularExponent(-0.1), std::invalid_argument);
}

TEST_CASE("pucci properties on random matrices") {
  std::mt19937_64 rng(11);
  const Ellipticity ell(0.7, 2.3);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 300; ++trial) {
      const SymMatrix X = random_sym(rng, n), Y = random_sym(rng, n);
      CHECK(std::abs(pucci_plus(X, ell) + pucci_minus(-X, ell)) < 1e-12);
      CHECK(std::abs(pucci_plus(X * 3.5, ell) - 3.5 * pucci_plus(X, ell)) < 1e-11);
      const double a = pucci_minus(X, ell) + pucci_minus(Y, ell);
      const double b = pucci_minus(X + Y, ell);
      const double c = pucci_minus(X, ell) + pucci_plus(Y, ell);
      const double d = pucci_plus(X + Y, ell);
      const double e = pucci_plus(X, ell) + pucci_plus(Y, ell);
      CHECK(b - a >= -1e-10);
      CHECK(c - b >= -1e-10);
      CHECK(d - c >= -1e-10);
      CHECK(e - d >= -1e-10);
    }
  }
}

TEST_CASE("pucci orthogonal invariance in 2-D") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 6.3);
  const Ellipticity ell(1.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const SymMatrix X = random_sym(rng, 2);
    const double t = U(rng), c = std::cos(t), s = std::sin(t);
    // Q X Q^T by hand
    std::array<double, 9> r{};
    const double q[2][2] = {{c, -s}, {s, c}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double v = 0;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) v += q[i][k] * X(k, l) * q[j][l];
        r[3 * i + j] = v;
      }
    const SymMatrix R(2, r);
    CHECK(std::abs(pucci_plus(R, ell) - pucci_plus(X, ell)) < 1e-10);
    CHECK(std::abs(pucci_minus(R, ell) - pucci_minus(X, ell)) < 1e-10);
  }
}

TEST_CASE("singular residual examples") {
  const Ellipticity ell(1.0, 2.0);
  {
    const auto r = singular_residual(Point{-0.5, 0, 0}, -SymMatrix::identity(2), -4.0, SingularExponent(0.0), ell);
    CHECK(r.lower == doctest::Approx(-0.5));
  }
  {
    const auto r = singular_residual(Point{}, SymMatrix(2), 0.0, SingularExponent(0.4), ell);
    CHECK(r.lower == 0.0);
    CHECK(r.upper == 0.0);
  }
  {
    const auto r = singular_residual(Point{0.5, 0, 0}, SymMatrix::identity(2), 3.0, SingularExponent(0.5), ell);
    CHECK(r.lower == doctest::Approx(2.0 - 0.5 - std::sqrt(0.5) * 3.0).epsilon(1e-12));
    CHECK(r.lower == doctest::Approx(-0.621).epsilon(1e-3));
  }
  CHECK(gradient_weight(0.0, 0.0) == 1.0);
  CHECK(gradient_weight(0.0, 0.5) == 0.0);
}

TEST_CASE("p-laplace evaluation") {
  CHECK(*p_laplace_eval(Point{1, 0, 0}, SymMatrix::identity(2), 2.0) == 2.0);
  CHECK_FALSE(p_laplace_eval(Point{}, SymMatrix::identity(2), 1.5).has_value());
  CHECK(*p_laplace_eval(Point{0.3, -0.2, 0}, SymMatrix(2), 1.5) == 0.0);
  CHECK_THROWS_AS(p_laplace_eval(Point{1, 0, 0}, SymMatrix(2), 2.5), std::invalid_argument);
  CHECK_THROWS_AS(p_laplace_eval(Point{1, 0, 0}, SymMatrix(2), 1.0), std::invalid_argument);
}

TEST_CASE("radial p-laplace constant and identity") {
  // c_p = ((p-1)/p) n^{-1/(p-1)}: p = 1.5, n = 2 gives 1/3 * 2^{-2} = 1/12
  CHECK(radial_plaplace_constant(1.5, 2) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  for (int n : {1, 2, 3})
    for (double p : {1.2, 1.5, 1.8, 2.0}) {
      const TestCase tc = make_case(CaseSpec{CaseKind::radial_plaplace, p}, n);
      for (double r : {0.05, 0.3, 0.77, 1.0}) {
        Point x{};
        x[0] = r / std::sqrt(double(n));
        for (int d = 1; d < n; ++d) x[d] = (d % 2 ? -1 : 1) * r / std::sqrt(double(n));
        const auto v = p_laplace_eval(tc.gradient(x), tc.hessian(x), p);
        REQUIRE(v);
        CHECK(std::abs(*v - 1.0) < 1e-8);
      }
    }
}

TEST_CASE("catalog cases") {
  const TestCase q = make_case(parse_case("quadratic:1"), 2);
  CHECK(q.f(Point{0.3, 0.1, 0}) == 2.0);
  CHECK(q.hessian(Point{0.1, 0.2, 0})(0, 0) == 1.0);
  CHECK(q.hessian(Point{0.1, 0.2, 0})(0, 1) == 0.0);
  const TestCase qn = make_case(parse_case("quadratic:-2"), 2);
  CHECK(qn.f(Point{}) == -4.0);

  const TestCase cone = make_case(parse_case("cone"), 2);
  CHECK_FALSE(cone.in_class);
  const Point x{0.6, 0.8, 0};
  const Point g = cone.gradient(x);
  CHECK(g[0] == doctest::Approx(0.6));
  const SymMatrix H = cone.hessian(x);
  CHECK(H(0, 0) == doctest::Approx(0.64));
  CHECK(H(0, 1) == doctest::Approx(-0.48));

  CHECK_THROWS_AS(make_case(parse_case("quadratic:0"), 2), std::invalid_argument);
  CHECK_THROWS_AS(make_case(parse_case("radial_plaplace:2.5"), 2), std::invalid_argument);
  CHECK_THROWS_AS(make_case(parse_case("radial_plaplace:1"), 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_case("saddle"), std::invalid_argument);
  CHECK_THROWS_AS(parse_case("quadratic:x"), std::invalid_argument);
  CHECK(parse_case("radial_plaplace").param == 1.5);
}

TEST_CASE("catalog cases satisfy both inequalities on a dense sample") {
  const Ellipticity ell(1.0, 2.0);
  for (const char* name : {"quadratic:1", "quadratic:-0.5", "radial_plaplace:1.3", "radial_plaplace:1.8", "bump"}) {
    for (int n : {1, 2, 3}) {
      const TestCase tc = make_case(parse_case(name), n, ell);
      std::mt19937_64 rng(3);
      std::uniform_real_distribution<double> U(-1.0, 1.0);
      for (int k = 0; k < 500; ++k) {
        Point x{};
        for (int d = 0; d < n; ++d) x[d] = U(rng);
        if (norm(x, n) > 1.0) continue;
        const Point g = tc.gradient(x);
        if (norm(g, n) <= 1e-8) continue;
        const auto r = singular_residual(g, tc.hessian(x), tc.f(x), tc.gamma, tc.ell);
        CHECK(r.lower <= 1e-9);
        CHECK(r.upper >= -1e-9);
      }
    }
  }
}

TEST_CASE("catalog derivatives agree with finite differences") {
  auto g = build_ball_grid(2, 65);
  const double h = g->spacing();
  for (const char* name : {"quadratic:1", "radial_plaplace:1.5", "bump"}) {
    const TestCase tc = make_case(parse_case(name), 2);
    const auto u = tc.sample_u(g);
    const auto d = fd_derivatives(u);
    double worst = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) {
      if (!d.valid[i]) continue;
      const Point x = g->coords(i);
      if (norm(x, 2) < 0.2) continue;  // radial Hessian is only C^0 at the origin
      worst = std::max(worst, (d.hessian[i] - tc.hessian(x)).frobenius());
    }
    CHECK(worst < 60.0 * h * h);  // bump has fourth derivatives of order pi^4
  }
}
