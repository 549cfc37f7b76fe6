#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "parabolab/catalog.hpp"
#include "parabolab/contact.hpp"
#include "parabolab/covering.hpp"
#include "parabolab/density.hpp"
#include "parabolab/grid_io.hpp"
#include "parabolab/measure.hpp"
#include "parabolab/parallel.hpp"
#include "parabolab/report.hpp"
#include "parabolab/solver.hpp"
#include "parabolab/verify.hpp"

namespace fs = std::filesystem;
using namespace parabolab;

namespace {

struct Global {
  int threads = 0;
  bool manifest = false;
  std::string out_dir = "parabolab_out";
  int resolution = 129;
  std::uint64_t seed = 7;
  int ndim = 2;
};

// --in FILE or --case NAME
struct Source {
  std::string in;
  std::string case_name;
};

void add_source(CLI::App* sub, Source& s) {
  auto* a = sub->add_option("--in", s.in, "GF01 field");
  auto* b = sub->add_option("--case", s.case_name, "catalog case, e.g. quadratic:1, cone, radial_plaplace:1.5, bump");
  a->excludes(b);
  b->excludes(a);
}

GridFunction load_source(const Source& s, const Global& g) {
  if (!s.in.empty()) return read_gf01(s.in);
  if (s.case_name.empty()) throw std::invalid_argument("need --in or --case");
  return make_case(parse_case(s.case_name), g.ndim).sample_u(build_ball_grid(g.ndim, g.resolution));
}

Json base_manifest(const std::string& command, const Global& g) {
  return Json{{"command", command},
              {"resolution", g.resolution},
              {"ndim", g.ndim},
              {"seed", g.seed},
              {"threads", g.threads},
              {"out_dir", g.out_dir}};
}

Json source_manifest(const Source& s) {
  return s.in.empty() ? Json{{"case", s.case_name}} : Json{{"in", s.in}};
}

std::string out(const Global& g, const std::string& name) { return (fs::path(g.out_dir) / name).string(); }

void emit(const Global& g, const std::string& file, const Json& report) {
  write_json(out(g, file), report);
  std::cout << report.dump(2) << '\n';
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) v.push_back(std::stod(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return v;
}

Point parse_point(const std::string& text, int ndim) {
  const auto v = parse_list(text);
  if (static_cast<int>(v.size()) != ndim) throw std::invalid_argument("point needs " + std::to_string(ndim) + " coordinates");
  Point p{};
  for (int d = 0; d < ndim; ++d) p[d] = v[d];
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parabolab: contact sets, decay profiles and solvers for singular elliptic inequalities"};
  app.require_subcommand(1);
  // global flags may follow the subcommand
  app.fallthrough();
  Global G;
  app.add_option("--threads", G.threads, "worker cap (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);
  app.add_flag("--manifest", G.manifest, "print the resolved configuration before running");
  app.add_option("--out-dir", G.out_dir, "directory for reports and fields");
  app.add_option("--resolution", G.resolution, "nodes per axis (odd)");
  app.add_option("--seed", G.seed, "random seed");
  app.add_option("--ndim", G.ndim, "dimension for catalog cases")->check(CLI::Range(1, 3));

  // case
  auto* c_case = app.add_subcommand("case", "sample a catalog case");
  std::string case_arg;
  c_case->add_option("name", case_arg, "case name")->required();

  // solve
  auto* c_solve = app.add_subcommand("solve", "solve a p-Laplace or Pucci Dirichlet problem with catalog data");
  std::string solve_case, solve_kind = "plaplace", solve_sign = "minus";
  double solve_p = 0.0;
  SolverConfig scfg;
  c_solve->add_option("--case", solve_case, "case giving f and the boundary values")->required();
  c_solve->add_option("--kind", solve_kind, "plaplace | pucci")->check(CLI::IsMember({"plaplace", "pucci"}));
  c_solve->add_option("--p", solve_p, "exponent in (1, 2]; defaults to the case parameter");
  c_solve->add_option("--sign", solve_sign, "Pucci sign")->check(CLI::IsMember({"plus", "minus"}));
  c_solve->add_option("--max-iterations", scfg.max_iterations);
  c_solve->add_option("--tol", scfg.residual_tolerance);

  // contact
  auto* c_contact = app.add_subcommand("contact", "contact set of paraboloids of opening kappa");
  Source contact_src;
  double kappa = 1.0;
  std::string dir_text = "lower", vball;
  std::optional<double> contact_tol;
  add_source(c_contact, contact_src);
  c_contact->add_option("--kappa", kappa)->required();
  c_contact->add_option("--dir", dir_text, "lower | upper | both")->check(CLI::IsMember({"lower", "upper", "both"}));
  c_contact->add_option("--tol", contact_tol, "membership tolerance (default kappa h^2)");
  c_contact->add_option("--vertex-ball", vball, "restrict vertices to a ball: x,y[,z],r");

  // envelope
  auto* c_env = app.add_subcommand("envelope", "Moreau envelope u_eps");
  Source env_src;
  double env_eps = 0.5;
  add_source(c_env, env_src);
  c_env->add_option("--eps", env_eps)->required();

  // decay
  auto* c_decay = app.add_subcommand("decay", "contact-complement ladder and fitted decay exponent");
  Source decay_src;
  Ladder ladder;
  std::string decay_dir = "lower";
  add_source(c_decay, decay_src);
  c_decay->add_option("--t0", ladder.t0);
  c_decay->add_option("--M", ladder.M);
  c_decay->add_option("--kmax", ladder.kmax);
  c_decay->add_option("--dir", decay_dir)->check(CLI::IsMember({"lower", "upper", "both"}));

  // w2d
  auto* c_w2d = app.add_subcommand("w2d", "L^delta Hessian estimate by both routes");
  Source w2d_src;
  double delta = 0.3, w2d_M = 2.0;
  add_source(c_w2d, w2d_src);
  c_w2d->add_option("--delta", delta);
  c_w2d->add_option("--M", w2d_M);

  // density
  auto* c_density = app.add_subcommand("density", "nonemptiness witness, density scan and barrier and vertex-map probe");
  std::string density_case;
  double dK = 1.0, probe_r = 0.25, probe_A = 3.0;
  std::string dMs = "2,4,8", probe_x0;
  std::size_t dsamples = 200;
  c_density->add_option("--case", density_case)->required();
  c_density->add_option("--K", dK);
  c_density->add_option("--M", dMs, "comma separated list");
  c_density->add_option("--samples", dsamples);
  c_density->add_option("--x0", probe_x0, "run the barrier and vertex-map probe around this point");
  c_density->add_option("--r", probe_r);
  c_density->add_option("--A", probe_A);

  // covering
  auto* c_cov = app.add_subcommand("covering", "check the covering lemma on a raster pair E inside F");
  std::string cov_E, cov_F;
  double cov_mu = 0.0;
  std::size_t cov_samples = 200;
  bool cov_generate = false;
  c_cov->add_option("--E", cov_E, "GF01 0/1 mask");
  c_cov->add_option("--F", cov_F, "GF01 0/1 mask");
  c_cov->add_flag("--generate", cov_generate, "seeded union of random balls instead of masks");
  c_cov->add_option("--mu", cov_mu, "density level (generated instances pick their own)");
  c_cov->add_option("--samples", cov_samples);

  // verify
  auto* c_verify = app.add_subcommand("verify", "run the acceptance suite");
  std::vector<int> only;
  c_verify->add_option("--only", only, "criterion ids to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    set_thread_cap(static_cast<unsigned>(G.threads));
    fs::create_directories(G.out_dir);
    auto* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    Json man = base_manifest(cmd, G);

    if (cmd == "case") {
      man["case"] = case_arg;
      if (G.manifest) std::cout << man.dump(2) << '\n';
      const auto tc = make_case(parse_case(case_arg), G.ndim);
      auto grid = build_ball_grid(G.ndim, G.resolution);
      const auto u = tc.sample_u(grid), f = tc.sample_f(grid);
      write_gf01(out(G, "u.gf"), u);
      write_gf01(out(G, "f.gf"), f);
      Json r = report_header(cmd, man);
      r["case"] = {{"name", tc.name},
                   {"gamma", tc.gamma.value()},
                   {"lambda", tc.ell.lambda()},
                   {"Lambda", tc.ell.Lambda()},
                   {"in_class", tc.in_class},
                   {"notes", tc.notes},
                   {"u_sup", number(u.sup_norm())},
                   {"f_sup", number(f.sup_norm())}};
      emit(G, "case.json", r);
      return 0;
    }

    if (cmd == "solve") {
      const auto tc = make_case(parse_case(solve_case), G.ndim);
      auto grid = build_ball_grid(G.ndim, G.resolution);
      const auto f = tc.sample_f(grid);
      scfg.seed = G.seed;
      man["case"] = solve_case;
      man["kind"] = solve_kind;
      SolveResult s = [&] {
        if (solve_kind == "plaplace") {
          double p = solve_p;
          if (p == 0.0) p = tc.spec.kind == CaseKind::radial_plaplace ? tc.spec.param : 2.0;
          man["p"] = p;
          if (G.manifest) std::cout << man.dump(2) << '\n';
          return solve_plaplace(f, tc.u, p, scfg);
        }
        man["sign"] = solve_sign;
        if (G.manifest) std::cout << man.dump(2) << '\n';
        return solve_pucci(f, tc.u, solve_sign == "plus" ? PucciSign::plus : PucciSign::minus, tc.ell, scfg);
      }();
      double err = 0.0;
      for (std::size_t i = 0; i < grid->size(); ++i)
        if (grid->in_ball(i)) err = std::max(err, std::abs(s.u[i] - tc.u(grid->coords(i))));
      write_gf01(out(G, "solution.gf"), s.u);
      std::vector<std::vector<double>> rows;
      for (const auto& e : s.log) rows.push_back({double(e.iteration), double(e.stage), e.eps_reg, e.energy, e.residual, e.step});
      write_csv(out(G, "solve_log.csv"), {"iteration", "stage", "eps_reg", "energy", "residual", "step"}, rows);
      Json r = report_header(cmd, man);
      r["solve"] = to_json(s);
      r["max_error_vs_case"] = number(err);
      r["residual_report"] = to_json(residual_report(s.u, f, tc.gamma, tc.ell), *grid);
      emit(G, "solve.json", r);
      return s.converged ? 0 : 1;
    }

    if (cmd == "contact") {
      man.update(source_manifest(contact_src));
      man["kappa"] = kappa;
      man["dir"] = dir_text;
      man["vertex_ball"] = vball;
      const auto u = load_source(contact_src, G);
      const int n = u.grid().ndim();
      const double tol = contact_tol.value_or(default_contact_tol(u.grid(), kappa));
      man["tol"] = tol;
      if (G.manifest) std::cout << man.dump(2) << '\n';
      std::optional<VertexSet> V;
      if (vball.empty()) {
        V = VertexSet::full(u.grid_ptr());
      } else {
        const auto v = parse_list(vball);
        if (static_cast<int>(v.size()) != n + 1) throw std::invalid_argument("--vertex-ball needs n + 1 numbers");
        Point c{};
        for (int d = 0; d < n; ++d) c[d] = v[d];
        V = VertexSet::ball(u.grid_ptr(), c, v[n]);
      }
      const auto cs = contact_set(u, kappa, *V, parse_direction(dir_text), tol);
      write_gf01(out(G, "contact_mask.gf"), cs.mask);
      Json r = report_header(cmd, man);
      r["contact"] = to_json(cs);
      emit(G, "contact.json", r);
      return 0;
    }

    if (cmd == "envelope") {
      man.update(source_manifest(env_src));
      man["eps"] = env_eps;
      if (G.manifest) std::cout << man.dump(2) << '\n';
      const auto u = load_source(env_src, G);
      const auto ue = moreau_envelope(u, env_eps);
      write_gf01(out(G, "envelope.gf"), ue);
      double gap = 0.0;
      for (std::size_t i = 0; i < u.grid().size(); ++i)
        if (u.grid().in_ball(i)) gap = std::max(gap, u[i] - ue[i]);
      Json r = report_header(cmd, man);
      r["envelope"] = {{"eps", env_eps}, {"kappa", 2.0 / std::pow(env_eps, 4)}, {"max_gap", number(gap)}};
      emit(G, "envelope.json", r);
      return 0;
    }

    if (cmd == "decay") {
      man.update(source_manifest(decay_src));
      man["ladder"] = {{"t0", ladder.t0}, {"M", ladder.M}, {"kmax", ladder.kmax}};
      man["dir"] = decay_dir;
      if (G.manifest) std::cout << man.dump(2) << '\n';
      const auto u = load_source(decay_src, G);
      const auto rep = decay_profile(u, parse_direction(decay_dir), ladder);
      write_decay_csv(out(G, "decay.csv"), rep);
      Json r = report_header(cmd, man);
      r["decay"] = to_json(rep);
      emit(G, "decay.json", r);
      return 0;
    }

    if (cmd == "w2d") {
      man.update(source_manifest(w2d_src));
      man["delta"] = delta;
      man["M"] = w2d_M;
      if (G.manifest) std::cout << man.dump(2) << '\n';
      const auto u = load_source(w2d_src, G);
      const auto cmp = compare_routes(u, delta);
      Json r = report_header(cmd, man);
      r["direct"] = number(cmp.direct);
      r["decay_route"] = to_json(decay_route_bound(u, delta, w2d_M));
      r["consistent"] = cmp.consistent;
      if (!w2d_src.case_name.empty()) {
        const auto tc = make_case(parse_case(w2d_src.case_name), G.ndim);
        r["normalization"] = to_json(normalize_and_ratio(u, tc.sample_f(u.grid_ptr()), tc.gamma, 1e-12, delta));
      }
      emit(G, "w2d.json", r);
      return 0;
    }

    if (cmd == "density") {
      man["case"] = density_case;
      man["K"] = dK;
      man["M"] = parse_list(dMs);
      man["samples"] = dsamples;
      man["x0"] = probe_x0;
      man["r"] = probe_r;
      man["A"] = probe_A;
      if (G.manifest) std::cout << man.dump(2) << '\n';
      const auto tc = make_case(parse_case(density_case), G.ndim);
      auto grid = build_ball_grid(G.ndim, G.resolution);
      const auto u0 = tc.sample_u(grid);
      // scale into the small-data regime first
      const auto nr = normalize_and_ratio(u0, tc.sample_f(grid), tc.gamma, 1e-12, 0.3);
      const auto u = u0.scaled(nr.scaling.a);
      Json r = report_header(cmd, man);
      r["scale"] = number(nr.scaling.a);
      r["witness"] = to_json(nonempty_witness(u, dK), G.ndim);
      r["scan"] = to_json(density_scan(u, dK, parse_list(dMs), dsamples, G.seed), G.ndim);
      if (!probe_x0.empty()) {
        Json probes = Json::array();
        for (double M : parse_list(dMs)) {
          Json p = to_json(density_probe(u, dK, M, parse_point(probe_x0, G.ndim), probe_r, probe_A, tc.ell), G.ndim);
          p["M"] = M;
          probes.push_back(p);
        }
        r["probes"] = probes;
      }
      emit(G, "density.json", r);
      return 0;
    }

    if (cmd == "covering") {
      std::optional<CoveringInstance> inst;
      if (cov_generate) {
        inst = random_covering_instance(build_ball_grid(G.ndim, G.resolution), G.seed);
        if (!inst) throw std::invalid_argument("generated E is empty; try another seed");
        if (cov_mu > 0.0) inst->mu = cov_mu;
        man["generator"] = "random_ball_union";
      } else {
        if (cov_E.empty() || cov_F.empty()) throw std::invalid_argument("need --E and --F, or --generate");
        inst = CoveringInstance{{read_gf01_mask(cov_E), true}, {read_gf01_mask(cov_F), true}, cov_mu};
        man["E"] = cov_E;
        man["F"] = cov_F;
      }
      man["mu"] = inst->mu;
      man["samples"] = cov_samples;
      if (G.manifest) std::cout << man.dump(2) << '\n';
      if (cov_generate) {
        write_gf01(out(G, "E.gf"), inst->E.cells);
        write_gf01(out(G, "F.gf"), inst->F.cells);
      }
      const auto v = covering_check(inst->E, inst->F, inst->mu, cov_samples, G.seed);
      Json r = report_header(cmd, man);
      r["verdict"] = to_json(v, inst->E.cells.grid().ndim());
      emit(G, "covering.json", r);
      return 0;
    }

    if (cmd == "verify") {
      man["only"] = only;
      if (G.manifest) std::cout << man.dump(2) << '\n';
      VerifyOptions opts;
      opts.resolution = G.resolution;
      opts.seed = G.seed;
      opts.out_dir = G.out_dir;
      std::vector<CriterionResult> results;
      auto show = [](const CriterionResult& c) {
        std::cout << "criterion " << c.id << " " << c.name << ": " << (c.pass() ? "pass" : "FAIL") << " ("
                  << c.seconds << " s) " << c.summary << std::endl;
      };
      if (only.empty()) {
        results = run_verify(opts, show);
      } else {
        for (int id : only) {
          results.push_back(run_criterion(id, opts));
          show(results.back());
        }
      }
      Json crit = Json::array(), timing = Json::array();
      bool all = true;
      for (const auto& c : results) {
        Json j = to_json(c);
        timing.push_back({{"id", c.id}, {"seconds", c.seconds}, {"budget_seconds", c.budget_seconds}});
        j.erase("seconds");
        crit.push_back(j);
        all = all && c.pass();
      }
      Json r = report_header(cmd, man);
      r["all_pass"] = all;
      r["criteria"] = crit;
      write_json(out(G, "verify_summary.json"), r);
      // wall-clock times live apart from the summary so that stays reproducible
      write_json(out(G, "verify_timings.json"), Json{{"schema", kSchema}, {"timings", timing}});
      if (!all) {
        std::cerr << "verification failed; report: " << out(G, "verify_summary.json") << '\n';
        return 1;
      }
      std::cout << "all criteria pass; report: " << out(G, "verify_summary.json") << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
