#include "parabolab/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace parabolab {

CaseSpec parse_case(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  CaseSpec spec;
  if (head == "quadratic") spec.kind = CaseKind::quadratic;
  else if (head == "cone") spec.kind = CaseKind::cone;
  else if (head == "radial_plaplace") spec.kind = CaseKind::radial_plaplace;
  else if (head == "bump") spec.kind = CaseKind::bump;
  else throw std::invalid_argument("unknown case '" + std::string(text) + "'");

  if (colon != std::string_view::npos) {
    const std::string arg(text.substr(colon + 1));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size() || arg.empty())
      throw std::invalid_argument("bad case parameter in '" + std::string(text) + "'");
    spec.param = v;
  } else if (spec.kind == CaseKind::radial_plaplace) {
    spec.param = 1.5;
  }
  return spec;
}

std::string case_name(const CaseSpec& spec) {
  std::ostringstream os;
  switch (spec.kind) {
    case CaseKind::quadratic: os << "quadratic:" << spec.param; break;
    case CaseKind::cone: os << "cone"; break;
    case CaseKind::radial_plaplace: os << "radial_plaplace:" << spec.param; break;
    case CaseKind::bump: os << "bump"; break;
  }
  return os.str();
}

double radial_plaplace_constant(double p, int ndim) {
  return (p - 1.0) / p * std::pow(static_cast<double>(ndim), -1.0 / (p - 1.0));
}

std::vector<std::string> list_cases() {
  return {"quadratic:<a>", "cone", "radial_plaplace:<p>", "bump"};
}

namespace {

double sq_norm(const Point& x, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += x[d] * x[d];
  return s;
}

void verify_case(const TestCase& tc) {
  // 9 points per axis, restricted to the ball
  const int k = 9;
  int total = 1;
  for (int d = 0; d < tc.ndim; ++d) total *= k;
  for (int flat = 0; flat < total; ++flat) {
    Point x{};
    int rest = flat;
    for (int d = 0; d < tc.ndim; ++d) {
      x[d] = -1.0 + 2.0 * (rest % k) / (k - 1);
      rest /= k;
    }
    if (sq_norm(x, tc.ndim) > 1.0) continue;
    const Point g = tc.gradient(x);
    if (norm(g, tc.ndim) <= 1e-8) continue;
    const SymMatrix H = tc.hessian(x);
    const auto r = singular_residual(g, H, tc.f(x), tc.gamma, tc.ell);
    const double scale = 1e-9 * (1.0 + H.frobenius() + std::abs(tc.f(x)));
    if (r.lower > scale || r.upper < -scale)
      throw std::logic_error("catalog case " + tc.name + " violates its inequality");
  }
}

}  // namespace

TestCase make_case(const CaseSpec& spec, int ndim, const Ellipticity& ell) {
  if (ndim < 1 || ndim > 3) throw std::invalid_argument("make_case: ndim must be 1, 2 or 3");
  TestCase tc;
  tc.spec = spec;
  tc.name = case_name(spec);
  tc.ndim = ndim;
  tc.ell = ell;
  const int n = ndim;

  switch (spec.kind) {
    case CaseKind::quadratic: {
      const double a = spec.param;
      if (a == 0.0 || !std::isfinite(a)) throw std::invalid_argument("quadratic: need a != 0");
      // P-(aI) for a > 0 and P+(aI) for a < 0; both lie in [P-, P+] of the Hessian.
      const SymMatrix H = SymMatrix::identity(n) * a;
      const double fval = a > 0.0 ? pucci_minus(H, ell) : pucci_plus(H, ell);
      tc.u = [a, n](const Point& x) { return 0.5 * a * sq_norm(x, n); };
      tc.gradient = [a](const Point& x) { return Point{a * x[0], a * x[1], a * x[2]}; };
      tc.hessian = [H](const Point&) { return H; };
      tc.f = [fval](const Point&) { return fval; };
      tc.gamma = SingularExponent(0.0);
      tc.notes = "constant Hessian aI; lower contact radius kappa/(kappa+a) for a > 0";
      break;
    }
    case CaseKind::cone: {
      tc.u = [n](const Point& x) { return norm(x, n); };
      tc.gradient = [n](const Point& x) {
        const double r = norm(x, n);
        if (r == 0.0) return Point{};
        return Point{x[0] / r, x[1] / r, x[2] / r};
      };
      tc.hessian = [n](const Point& x) {
        const double r = norm(x, n);
        if (r == 0.0) return SymMatrix(n);
        const Point unit{x[0] / r, x[1] / r, x[2] / r};
        return (SymMatrix::identity(n) - SymMatrix::outer(n, unit)) * (1.0 / r);
      };
      tc.f = [](const Point&) { return 0.0; };
      tc.gamma = SingularExponent(0.0);
      tc.in_class = false;
      tc.notes =
          "outside the class: Hessian ~ 1/|x| breaks the inequality near 0; upper contact "
          "sets miss a ball of radius ~1/t";
      break;
    }
    case CaseKind::radial_plaplace: {
      const double p = spec.param;
      if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("radial_plaplace: need 1 < p <= 2");
      const double c = radial_plaplace_constant(p, n);
      const double q = p / (p - 1.0);
      tc.u = [c, q, n](const Point& x) { return c * std::pow(norm(x, n), q); };
      tc.gradient = [c, q, n](const Point& x) {
        const double r = norm(x, n);
        if (r == 0.0) return Point{};
        const double k = c * q * std::pow(r, q - 2.0);
        return Point{k * x[0], k * x[1], k * x[2]};
      };
      tc.hessian = [c, q, n](const Point& x) {
        const double r = norm(x, n);
        if (r == 0.0) return SymMatrix(n);  // q >= 2, so D2u(0) = 0 except at p = 2
        const Point unit{x[0] / r, x[1] / r, x[2] / r};
        const double tangential = c * q * std::pow(r, q - 2.0);
        const double radial = c * q * (q - 1.0) * std::pow(r, q - 2.0);
        return SymMatrix::identity(n) * tangential + SymMatrix::outer(n, unit) * (radial - tangential);
      };
      tc.f = [](const Point&) { return 1.0; };
      tc.gamma = SingularExponent(2.0 - p);
      tc.ell = Ellipticity(p - 1.0, 1.0);
      tc.notes = "exact solution of Delta_p u = 1 with gamma = 2-p, lambda = p-1, Lambda = 1";
      if (p == 2.0) {
        tc.hessian = [c, n](const Point&) { return SymMatrix::identity(n) * (2.0 * c); };
      }
      break;
    }
    case CaseKind::bump: {
      constexpr double pi = std::numbers::pi;
      tc.u = [n](const Point& x) { return std::cos(0.5 * pi * sq_norm(x, n)); };
      tc.gradient = [n](const Point& x) {
        const double k = -pi * std::sin(0.5 * pi * sq_norm(x, n));
        return Point{k * x[0], k * x[1], k * x[2]};
      };
      tc.hessian = [n](const Point& x) {
        const double s = 0.5 * pi * sq_norm(x, n);
        return SymMatrix::identity(n) * (-pi * std::sin(s)) + SymMatrix::outer(n, x) * (-pi * pi * std::cos(s));
      };
      const auto hess = tc.hessian;
      const auto grad = tc.gradient;
      tc.f = [hess, grad, ell, n](const Point& x) { return pucci_minus(hess(x), ell) - norm(grad(x), n); };
      tc.gamma = SingularExponent(0.0);
      tc.notes = "f chosen so the P- side holds with equality (gamma = 0)";
      break;
    }
  }
  if (tc.in_class) verify_case(tc);
  return tc;
}

}  // namespace parabolab
