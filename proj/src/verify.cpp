#include "parabolab/verify.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <sstream>

#include "parabolab/catalog.hpp"
#include "parabolab/covering.hpp"
#include "parabolab/density.hpp"
#include "parabolab/envelope.hpp"
#include "parabolab/grid_io.hpp"
#include "parabolab/random.hpp"

namespace parabolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Check {
  bool ok = true;
  Json details = Json::object();
  std::string summary;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (summary.empty()) summary = "failed: " + what;
    }
  }
};

std::string out_path(const VerifyOptions& o, const std::string& name) {
  return (std::filesystem::path(o.out_dir) / name).string();
}

SymMatrix random_sym(std::mt19937_64& rng, int n) {
  std::array<double, 9> a{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[3 * i + j] = uniform(rng, -1.0, 1.0);
  return SymMatrix(n, a);
}

SymMatrix random_psd(std::mt19937_64& rng, int n) {
  SymMatrix X(n);
  for (int r = 0; r < n; ++r) {
    Point v{};
    for (int d = 0; d < n; ++d) v[d] = uniform(rng, -1.0, 1.0);
    X = X + SymMatrix::outer(n, v);
  }
  return X;
}

// |D2_h u|_F on Hessian-valid nodes, 0 on the rest of the mask
GridFunction hessian_magnitude(const GridFunction& u) {
  const auto d = fd_derivatives(u);
  const GridSpec& g = u.grid();
  std::vector<double> v(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (d.valid[i]) v[i] = d.hessian[i].frobenius();
  return GridFunction(u.grid_ptr(), std::move(v));
}

GridFunction normalized_u(const TestCase& tc, const GridPtr& g) {
  const auto u = tc.sample_u(g);
  const auto nr = normalize_and_ratio(u, tc.sample_f(g), tc.gamma, 1e-12, 0.3);
  return u.scaled(nr.scaling.a);
}

double max_error(const GridFunction& u, const std::function<double(const Point&)>& exact) {
  const GridSpec& g = u.grid();
  double e = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.in_ball(i)) e = std::max(e, std::abs(u[i] - exact(g.coords(i))));
  return e;
}

// ---------------------------------------------------------------------------

Check pucci_algebra(const VerifyOptions& o) {
  Check c;
  auto rng = split_stream(o.seed, 1);
  std::size_t tested = 0;
  double worst = 0.0;
  for (int n : {2, 3}) {
    const Ellipticity unit(1.0, 2.0);
    c.require(pucci_minus(SymMatrix::identity(n), unit) == n * 1.0, "P-(I) = n lambda");
    c.require(pucci_plus(SymMatrix::identity(n), unit) == n * 2.0, "P+(I) = n Lambda");
    for (int trial = 0; trial < 500; ++trial, ++tested) {
      const double lambda = uniform(rng, 0.1, 2.0);
      const Ellipticity ell(lambda, lambda * uniform(rng, 1.0, 5.0));
      const SymMatrix X = random_sym(rng, n), Y = random_sym(rng, n);
      const double k = uniform(rng, 0.0, 10.0);
      auto dev = [&](double v) { worst = std::max(worst, v); return v <= 1e-10; };
      for (PucciSign s : {PucciSign::plus, PucciSign::minus}) {
        const PucciSign other = s == PucciSign::plus ? PucciSign::minus : PucciSign::plus;
        c.require(dev(std::abs(pucci_eval(X * k, ell, s) - k * pucci_eval(X, ell, s))), "homogeneity");
        c.require(dev(std::abs(pucci_eval(-X, ell, s) + pucci_eval(X, ell, other))), "P(-X) = -P'(X)");
      }
      const double a = pucci_minus(X, ell) + pucci_minus(Y, ell);
      const double b = pucci_minus(X + Y, ell);
      const double m = pucci_minus(X, ell) + pucci_plus(Y, ell);
      const double d = pucci_plus(X + Y, ell);
      const double e = pucci_plus(X, ell) + pucci_plus(Y, ell);
      c.require(dev(std::max(0.0, a - b)) && dev(std::max(0.0, b - m)) && dev(std::max(0.0, m - d)) &&
                    dev(std::max(0.0, d - e)),
                "subadditivity chain");
      const SymMatrix P = random_psd(rng, n);
      c.require(dev(std::abs(pucci_plus(P, ell) - ell.Lambda() * P.trace())), "P+ = Lambda tr on X >= 0");
      c.require(dev(std::abs(pucci_minus(P, ell) - ell.lambda() * P.trace())), "P- = lambda tr on X >= 0");
    }
  }
  c.details = {{"matrices", tested}, {"worst_deviation", number(worst)}, {"tolerance", 1e-10}};
  return c;
}

Check envelope_transform(const VerifyOptions& o) {
  Check c;
  auto g = build_ball_grid(2, 33);
  double worst = 0.0;
  const std::vector<std::uint8_t> all(g->size(), 1);
  for (int s = 0; s < 20; ++s) {
    auto rng = split_stream(o.seed, 100 + s);
    const double kappa = uniform(rng, 0.5, 50.0);
    std::vector<double> lo(g->size(), kInf), hi(g->size(), kInf);
    for (std::size_t i = 0; i < g->size(); ++i)
      if (g->in_ball(i)) {
        lo[i] = uniform(rng, -1.0, 1.0);
        hi[i] = -lo[i];  // upper transform of u is minus the lower transform of -u
      }
    for (const auto* f : {&lo, &hi}) {
      const auto fast = min_convolve(*g, *f, kappa);
      const auto slow = min_convolve_brute(*g, *f, kappa, all);
      for (std::size_t i = 0; i < g->size(); ++i) worst = std::max(worst, std::abs(fast.value[i] - slow.value[i]));
    }
  }
  c.require(worst <= 1e-12, "transform differs from brute force");
  c.details = {{"fields", 20}, {"resolution", 33}, {"max_abs_difference", number(worst)}};
  return c;
}

Check contact_oracle(const VerifyOptions&) {
  Check c;
  auto g = build_ball_grid(2, 129);
  const auto u = make_case(parse_case("quadratic:1"), 2).sample_u(g);
  const auto cs = contact_set(u, 1.0, VertexSet::full(g), Direction::lower);
  std::size_t diff = 0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (!g->in_ball(i)) continue;
    const bool expect = norm(g->coords(i), 2) <= 0.5;
    diff += expect != cs.mask.contains(i);
  }
  const double sym = diff * g->cell_volume();
  const double bound = 8.0 * g->spacing();
  c.require(sym <= bound, "symmetric difference with {|x| <= 1/2}");
  c.details = {{"h", g->spacing()},
               {"contact_measure", number(measure(cs.mask))},
               {"expected_measure", number(std::numbers::pi / 4.0)},
               {"symmetric_difference", number(sym)},
               {"bound", number(bound)}};
  return c;
}

Check scaling_invariants(const VerifyOptions& o) {
  Check c;
  auto g = build_ball_grid(2, o.resolution);
  const auto V = VertexSet::full(g);
  Json per = Json::array();
  for (const auto& name : verify_catalog()) {
    const auto u = make_case(parse_case(name), 2).sample_u(g);
    bool scaling = true, ladder = true, duality = true;
    for (double a : {0.1, 3.0, 17.0}) {
      const double kappa = 4.0;
      const double tol = default_contact_tol(*g, kappa / a);
      const auto lhs = contact_set(u.scaled(a), kappa, V, Direction::lower, a * tol);
      const auto rhs = contact_set(u, kappa / a, V, Direction::lower, tol);
      scaling = scaling && lhs.mask == rhs.mask;
    }
    std::optional<CellSet> prev;
    for (int k = 0; k < 6; ++k) {
      const double kappa = std::pow(2.0, k);
      const auto cs = contact_set(u, kappa, V, Direction::lower);
      if (prev) ladder = ladder && prev->subset_of(cs.mask);
      prev = cs.mask;
      const auto up = contact_set(u, kappa, V, Direction::upper);
      const auto dual = contact_set(u.negated(), kappa, V, Direction::lower);
      duality = duality && up.mask == dual.mask;
    }
    c.require(scaling, name + " scaling");
    c.require(ladder, name + " ladder monotonicity");
    c.require(duality, name + " duality");
    per.push_back({{"case", name}, {"scaling", scaling}, {"ladder_monotone", ladder}, {"duality", duality}});
  }
  c.details = {{"resolution", o.resolution}, {"cases", per}};
  return c;
}

Check moreau(const VerifyOptions& o) {
  Check c;
  auto g = build_ball_grid(2, o.resolution);
  // kappa = 2 / eps^4 = 4 with a = -kappa/2 keeps the minimizer z = 2x on the grid
  const double a = -2.0, eps = std::pow(0.5, 0.25);
  const auto u = sample_function([&](const Point& x) { return 0.5 * a * norm(x, 2) * norm(x, 2); }, g);
  const auto ue = moreau_envelope(u, eps);
  const double coeff = a / (1.0 + a * std::pow(eps, 4) / 2.0);
  double worst_rel = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (!g->in_ball(i)) continue;
    const double r = norm(g->coords(i), 2);
    if (r > 0.5) continue;
    const double exact = 0.5 * coeff * r * r;
    worst_rel = std::max(worst_rel, std::abs(ue[i] - exact) / std::max(1.0, std::abs(exact)));
  }
  c.require(worst_rel <= 1e-8, "closed form");
  const std::vector<double> schedule{0.2, 0.3, 0.45, 0.6};
  bool below = true, monotone = true;
  for (const auto& name : verify_catalog()) {
    const auto v = make_case(parse_case(name), 2).sample_u(g);
    std::optional<GridFunction> prev;
    for (double e : schedule) {
      const auto ve = moreau_envelope(v, e);
      for (std::size_t i = 0; i < g->size(); ++i) {
        if (!g->in_ball(i)) continue;
        below = below && ve[i] <= v[i];
        if (prev) monotone = monotone && ve[i] <= (*prev)[i];
      }
      prev = ve;
    }
  }
  c.require(below, "u_eps <= u");
  c.require(monotone, "monotone in eps");
  c.details = {{"closed_form_max_relative_error", number(worst_rel)},
               {"eps_schedule", schedule},
               {"below", below},
               {"monotone", monotone}};
  return c;
}

Check decay_exponents(const VerifyOptions& o) {
  Check c;
  auto g = build_ball_grid(2, 257);
  const Ladder ladder{1.0, 2.0, 5};
  struct Target {
    const char* name;
    Direction dir;
    double lo, hi;
  };
  Json per = Json::array();
  for (const Target& t : {Target{"cone", Direction::upper, 1.6, 2.4}, Target{"quadratic:1", Direction::lower, 0.8, 1.2}}) {
    const auto u = make_case(parse_case(t.name), 2).sample_u(g);
    const auto r = decay_profile(u, t.dir, ladder);
    c.require(r.sigma >= t.lo && r.sigma <= t.hi, std::string(t.name) + " sigma");
    Json j = to_json(r);
    j["case"] = t.name;
    j["sigma_range"] = {t.lo, t.hi};
    per.push_back(j);
    if (!o.out_dir.empty()) {
      std::string file = std::string("decay_") + (t.dir == Direction::upper ? "cone_upper" : "quadratic_lower") + ".csv";
      write_decay_csv(out_path(o, file), r);
    }
  }
  c.details = {{"h", g->spacing()}, {"profiles", per}};
  return c;
}

Check dyadic_bound(const VerifyOptions& o) {
  Check c;
  auto g = build_ball_grid(2, o.resolution);
  std::size_t checked = 0, failed = 0;
  Json constants = Json::object();
  auto run = [&](const GridFunction& gf, const std::string& label) {
    for (double p : {0.3, 0.5, 1.0}) {
      const auto r = dyadic_norm(gf, default_dyadic(2, p));
      ++checked;
      if (!r.holds()) {
        ++failed;
        c.require(false, label + " p=" + format_double(p));
      }
    }
  };
  for (const auto& name : verify_catalog())
    run(hessian_magnitude(make_case(parse_case(name), 2).sample_u(g)), name);
  for (int s = 0; s < 50; ++s) {
    auto rng = split_stream(o.seed, 200 + s);
    const double amp = uniform(rng, 0.5, 8.0), phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double f1 = uniform(rng, 1.0, 6.0), f2 = uniform(rng, 1.0, 6.0);
    const auto gf = sample_function(
        [&](const Point& x) { return std::exp(amp * std::sin(f1 * x[0] + phase) * std::cos(f2 * x[1])); }, g);
    run(gf, "random field " + std::to_string(s));
  }
  for (double p : {0.3, 0.5, 1.0}) constants[format_double(p)] = number(dyadic_constant(default_dyadic(2, p)));
  c.details = {{"checked", checked}, {"failed", failed}, {"constants", constants}};
  return c;
}

Check c2_inclusion(const VerifyOptions& o) {
  Check c;
  auto g = build_ball_grid(2, o.resolution);
  Json per = Json::array();
  for (const char* name : {"quadratic:1", "bump", "radial_plaplace:1.5", "radial_plaplace:1.8"}) {
    const auto u = make_case(parse_case(name), 2).sample_u(g);
    std::size_t viol = 0, large = 0;
    for (int k = 0; k <= 5; ++k) {
      const auto r = inclusion_check(u, std::pow(2.0, k));
      viol += r.violations;
      large += r.large_hessian;
    }
    c.require(viol == 0, std::string(name) + " inclusion");
    per.push_back({{"case", name}, {"large_hessian_nodes", large}, {"violations", viol}});
  }
  c.details = {{"ladder", {{"t0", 1}, {"M", 2}, {"kmax", 5}}}, {"cases", per}};
  return c;
}

Check solver_oracles(const VerifyOptions& o) {
  Check c;
  Json runs = Json::array();
  auto record = [&](const std::string& label, const GridFunction& f, const SolveResult& s, double err,
                    const SingularExponent& gamma, const Ellipticity& ell) {
    const auto rr = residual_report(s.u, f, gamma, ell, 10.0);
    c.require(s.converged, label + " converged");
    c.require(rr.violations == 0, label + " residual report");
    runs.push_back({{"run", label},
                    {"h", s.u.grid().spacing()},
                    {"max_error", number(err)},
                    {"solve", {{"converged", s.converged}, {"iterations", s.iterations}, {"final_residual", number(s.final_residual)}}},
                    {"residual_report", to_json(rr, s.u.grid())}});
    if (!o.out_dir.empty()) write_gf01(out_path(o, "solve_" + label + ".gf"), s.u);
  };

  const double k = std::numbers::pi / 2.0;
  const auto wave = [k](const Point& x) { return std::cos(k * x[0]) * std::cos(k * x[1]); };
  for (int m : {65, 129}) {
    auto g = build_ball_grid(2, m);
    const double h = g->spacing();
    const auto f = sample_function([&](const Point& x) { return -2.0 * k * k * wave(x); }, g);
    const auto s = solve_plaplace(f, wave, 2.0);
    const double err = max_error(s.u, wave);
    c.require(err <= 2.0 * h * h, "poisson error <= 2h^2");
    record("poisson_m" + std::to_string(m), f, s, err, SingularExponent(0.0), Ellipticity(1.0, 1.0));
  }
  for (double p : {1.5, 1.8}) {
    const auto tc = make_case(parse_case("radial_plaplace:" + format_double(p)), 2);
    std::vector<double> errs;
    for (int m : {65, 129}) {
      auto g = build_ball_grid(2, m);
      const auto f = tc.sample_f(g);
      const auto s = solve_plaplace(f, tc.u, p);
      errs.push_back(max_error(s.u, tc.u));
      record("plaplace_p" + format_double(p) + "_m" + std::to_string(m), f, s, errs.back(), tc.gamma, tc.ell);
    }
    c.require(errs[0] >= 1.5 * errs[1], "radial p=" + format_double(p) + " error ratio");
  }
  // Pucci solve against a smooth exact solution
  for (int m : {65, 129}) {
    auto g = build_ball_grid(2, m);
    const auto ell = kDefaultEllipticity;
    const auto f = sample_function(
        [&](const Point& x) {
          const double cx = std::cos(k * x[0]), sx = std::sin(k * x[0]);
          const double cy = std::cos(k * x[1]), sy = std::sin(k * x[1]);
          SymMatrix H(2);
          H.set(0, 0, -k * k * cx * cy);
          H.set(1, 1, -k * k * cx * cy);
          H.set(0, 1, k * k * sx * sy);
          return pucci_minus(H, ell);
        },
        g);
    const auto s = solve_pucci(f, wave, PucciSign::minus, ell);
    record("pucci_minus_m" + std::to_string(m), f, s, max_error(s.u, wave), SingularExponent(0.0), ell);
  }
  c.details = {{"runs", runs}};
  return c;
}

Check density(const VerifyOptions& o) {
  Check c;
  auto g = build_ball_grid(2, o.resolution);
  const double h = g->spacing();
  Json witnesses = Json::array();
  for (const auto& name : verify_catalog()) {
    const auto tc = make_case(parse_case(name), 2);
    const auto u = normalized_u(tc, g);
    for (double K : {1.0, 2.0, 4.0}) {
      const auto w = nonempty_witness(u, K);
      c.require(w.in_contact && w.radius <= 0.5 + h, name + " witness");
      Json j = to_json(w, 2);
      j["case"] = name;
      j["K"] = K;
      witnesses.push_back(j);
    }
  }
  std::size_t random_witness_fail = 0;
  for (int s = 0; s < 20; ++s) {
    auto rng = split_stream(o.seed, 400 + s);
    const double f1 = uniform(rng, 1.0, 8.0), f2 = uniform(rng, 1.0, 8.0), ph = uniform(rng, 0.0, 6.3);
    // sup norm at most 1/16
    const auto u = sample_function(
        [&](const Point& x) { return std::sin(f1 * x[0] + ph) * std::cos(f2 * x[1] - ph) / 16.0; }, g);
    for (double K : {1.0, 2.0, 4.0}) {
      const auto w = nonempty_witness(u, K);
      if (!(w.in_contact && w.radius <= 0.5 + h)) ++random_witness_fail;
    }
  }
  c.require(random_witness_fail == 0, "random field witness");
  Json scans = Json::array(), probes = Json::array();
  std::size_t probe_count = 0, probe_fail = 0;
  // the probe's vertex ball has radius r (M - 1) / (8M), r / 16 at M = 2: it needs h <= 1/64 to hold a node
  const int probe_res = std::max(o.resolution, 129);
  auto gp = probe_res == o.resolution ? g : build_ball_grid(2, probe_res);
  for (const char* name : {"quadratic:1", "radial_plaplace:1.8"}) {
    const auto tc = make_case(parse_case(name), 2);
    const auto u = normalized_u(tc, g);
    const auto up = normalized_u(tc, gp);
    for (double K : {1.0, 2.0, 4.0}) {
      const auto scan = density_scan(u, K, {2.0, 4.0, 8.0}, 200, o.seed);
      c.require(scan.kept > 0, std::string(name) + " scan kept no ball");
      for (double r : scan.min_ratio) c.require(r > 0.0, std::string(name) + " density ratio");
      Json j = to_json(scan, 2);
      j["case"] = name;
      scans.push_back(j);
      for (double M : {2.0, 4.0, 8.0})
        for (const Point& x0 : {Point{0, 0, 0}, Point{0.3, 0.2, 0}, Point{-0.5, 0.1, 0}}) {
          const auto p = density_probe(up, K, M, x0, 0.25, 3.0, tc.ell);
          ++probe_count;
          const bool ok = p.compare.containment && p.compare.det_ok && p.barrier.gap_ok;
          if (!ok) {
            ++probe_fail;
            c.require(false, std::string(name) + " barrier and vertex-map probe");
            Json pj = to_json(p, 2);
            pj["case"] = name;
            pj["K"] = K;
            pj["M"] = M;
            probes.push_back(pj);
          }
        }
    }
  }
  c.details = {{"resolution", o.resolution},
               {"probe_resolution", probe_res},
               {"witnesses", witnesses},
               {"random_witness_failures", random_witness_fail},
               {"scans", scans},
               {"probes", probe_count},
               {"probe_failures", probe_fail},
               {"failed_probes", probes}};
  return c;
}

Check covering(const VerifyOptions& o) {
  Check c;
  auto g = build_ball_grid(2, 129);
  std::size_t tried = 0, passed = 0, concl_fail = 0;
  for (std::uint64_t s = 0; passed < 100 && s < 2000; ++s) {
    const auto inst = random_covering_instance(g, o.seed * 100003 + s);
    if (!inst) continue;
    ++tried;
    const auto v = covering_check(inst->E, inst->F, inst->mu, 200, o.seed + s);
    if (!v.hypothesis_ok) continue;
    ++passed;
    if (!v.conclusion_ok) ++concl_fail;
  }
  c.require(passed == 100, "fewer than 100 instances passed the hypothesis");
  c.require(concl_fail == 0, "conclusion failed");

  auto rng = split_stream(o.seed, 300);
  std::vector<Ball> family(100);
  for (auto& b : family) {
    b.radius = uniform(rng, 0.02, 0.3);
    for (int d = 0; d < 2; ++d) b.center[d] = uniform(rng, -0.8, 0.8);
  }
  const auto kept = vitali_select(family);
  bool disjoint = true;
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = i + 1; j < kept.size(); ++j)
      disjoint = disjoint && balls_disjoint(family[kept[i]], family[kept[j]], 2);
  const bool covers = vitali_covers(*g, family, kept);
  c.require(disjoint, "vitali disjointness");
  c.require(covers, "vitali 5-dilation cover");
  c.details = {{"instances_tried", tried},
               {"hypothesis_passed", passed},
               {"conclusion_failures", concl_fail},
               {"tolerance_formula", "3 h |dB_1|"},
               {"vitali", {{"family", family.size()}, {"kept", kept.size()}, {"disjoint", disjoint}, {"covers", covers}}}};
  return c;
}

Check ratio_stability(const VerifyOptions&) {
  Check c;
  Json per = Json::array();
  for (const char* name : {"radial_plaplace:1.5", "bump"}) {
    const auto tc = make_case(parse_case(name), 2);
    std::vector<double> ratios;
    Json runs = Json::array();
    for (int m : {129, 257}) {
      auto g = build_ball_grid(2, m);
      const auto nr = normalize_and_ratio(tc.sample_u(g), tc.sample_f(g), tc.gamma, 1e-12, 0.3);
      c.require(nr.u_scaled_sup <= 1.0 / 16.0 && nr.f_scaled_sup <= 1.0, std::string(name) + " normalization");
      ratios.push_back(nr.ratio);
      Json j = to_json(nr);
      j["h"] = g->spacing();
      runs.push_back(j);
    }
    const double change = std::abs(ratios[1] - ratios[0]) / ratios[0];
    c.require(change < 0.2, std::string(name) + " ratio change");
    per.push_back({{"case", name}, {"delta", 0.3}, {"relative_change", number(change)}, {"runs", runs}});
  }
  c.details = {{"cases", per}};
  return c;
}

struct Spec {
  const char* name;
  double budget;
  Check (*fn)(const VerifyOptions&);
};

const Spec kSpecs[kCriterionCount] = {
    {"pucci_algebra", 1.0, pucci_algebra},
    {"envelope_transform", 5.0, envelope_transform},
    {"contact_geometry", 2.0, contact_oracle},
    {"scaling_monotonicity", 10.0, scaling_invariants},
    {"moreau_envelope", 2.0, moreau},
    {"decay_exponents", 60.0, decay_exponents},
    {"dyadic_two_sided_bound", 30.0, dyadic_bound},
    {"c2_inclusion", 30.0, c2_inclusion},
    {"solver_oracles", 300.0, solver_oracles},
    {"density_nonemptiness", 180.0, density},
    {"covering_lemma", 60.0, covering},
    {"ratio_stability", 120.0, ratio_stability},
};

}  // namespace

std::vector<std::string> verify_catalog() {
  return {"quadratic:1", "quadratic:-1", "cone", "radial_plaplace:1.5", "radial_plaplace:1.8", "bump"};
}

CriterionResult run_criterion(int id, const VerifyOptions& opts) {
  if (id < 1 || id > kCriterionCount) throw std::invalid_argument("criterion id must be in 1..12");
  const Spec& spec = kSpecs[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = spec.name;
  r.budget_seconds = spec.budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    Check c = spec.fn(opts);
    r.property_ok = c.ok;
    r.summary = c.ok ? "ok" : c.summary;
    r.details = std::move(c.details);
  } catch (const std::exception& e) {
    r.property_ok = false;
    r.summary = std::string("error: ") + e.what();
    r.details = Json::object();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.property_ok && !r.pass()) r.summary = "over time budget";
  return r;
}

std::vector<CriterionResult> run_verify(const VerifyOptions& opts,
                                        const std::function<void(const CriterionResult&)>& on_result) {
  if (!opts.out_dir.empty()) std::filesystem::create_directories(opts.out_dir);
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, opts));
    if (on_result) on_result(out.back());
  }
  return out;
}

Json to_json(const CriterionResult& r) {
  return Json{{"id", r.id},
              {"name", r.name},
              {"pass", r.pass()},
              {"property_ok", r.property_ok},
              {"seconds", r.seconds},
              {"budget_seconds", r.budget_seconds},
              {"summary", r.summary},
              {"details", r.details}};
}

}  // namespace parabolab
