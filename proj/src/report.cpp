#include "parabolab/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace parabolab {

Json number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json point_json(const Point& x, int ndim) {
  Json a = Json::array();
  for (int d = 0; d < ndim; ++d) a.push_back(number(x[d]));
  return a;
}

Json ball_json(const Ball& b, int ndim) {
  return Json{{"center", point_json(b.center, ndim)}, {"radius", number(b.radius)}};
}

Json report_header(const std::string& command, const Json& manifest) {
  return Json{{"schema", kSchema}, {"command", command}, {"manifest", manifest}};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

void write_decay_csv(std::ostream& out, const DecayReport& r) {
  out << "k,t_k,measure_lower,measure_upper,measure_both\n";
  for (const auto& s : r.steps)
    out << s.k << ',' << format_double(s.t) << ',' << format_double(s.measure_lower) << ','
        << format_double(s.measure_upper) << ',' << format_double(s.measure_both) << '\n';
}

void write_decay_csv(const std::string& path, const DecayReport& r) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_decay_csv(out, r);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

Json to_json(const DecayReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"k", s.k},
                     {"t", number(s.t)},
                     {"measure_lower", number(s.measure_lower)},
                     {"measure_upper", number(s.measure_upper)},
                     {"measure_both", number(s.measure_both)}});
  return Json{{"direction", to_string(r.direction)},
              {"ladder", {{"t0", r.ladder.t0}, {"M", r.ladder.M}, {"kmax", r.ladder.kmax}}},
              {"steps", steps},
              {"empirical_sigma", number(r.sigma)},
              {"empirical_theta", number(r.theta)},
              {"empirical_M", number(r.fitted_M)},
              {"intercept", number(r.intercept)},
              {"fit_residual", number(r.fit_residual)},
              {"fit_range", {r.fit_first, r.fit_last}},
              {"fit_points", r.fit_points},
              {"saturated", r.saturated}};
}

Json to_json(const ContactSet& c) {
  return Json{{"direction", to_string(c.direction)},
              {"kappa", number(c.kappa)},
              {"tol", number(c.tol)},
              {"vertex_set", c.vertex_set},
              {"nodes", c.mask.count()},
              {"measure", number(measure(c.mask))},
              {"ring_members", c.ring_members},
              {"interior_measure", number(measure(c.interior()))}};
}

Json to_json(const SolveResult& r) {
  Json log = Json::array();
  for (const auto& e : r.log)
    log.push_back({{"iteration", e.iteration},
                   {"stage", e.stage},
                   {"eps_reg", number(e.eps_reg)},
                   {"energy", number(e.energy)},
                   {"residual", number(e.residual)},
                   {"step", number(e.step)}});
  return Json{{"converged", r.converged},
              {"iterations", r.iterations},
              {"final_residual", number(r.final_residual)},
              {"warning", r.warning},
              {"log", log}};
}

Json to_json(const ResidualReport& r, const GridSpec& grid) {
  Json locs = Json::array();
  for (std::size_t i : r.locations) locs.push_back(point_json(grid.coords(i), grid.ndim()));
  return Json{{"tau", number(r.tau)},
              {"checked", r.checked},
              {"violations", r.violations},
              {"worst_margin", number(r.worst_margin)},
              {"locations", locs}};
}

Json to_json(const DensityScanReport& r, int ndim) {
  Json per = Json::array();
  for (std::size_t i = 0; i < r.M.size(); ++i)
    per.push_back({{"M", number(r.M[i])},
                   {"min_ratio", number(r.min_ratio[i])},
                   {"worst_ball", ball_json(r.worst_ball[i], ndim)}});
  return Json{{"K", number(r.K)}, {"sampled", r.sampled}, {"kept", r.kept}, {"seed", r.seed}, {"per_M", per}};
}

Json to_json(const WitnessResult& r, int ndim) {
  return Json{{"x", point_json(r.x, ndim)},
              {"radius", number(r.radius)},
              {"in_contact", r.in_contact},
              {"within_half", r.within_half}};
}

Json to_json(const DensityProbe& p, int ndim) {
  const auto& b = p.barrier;
  const auto& c = p.compare;
  return Json{{"x1_node", p.x1_node},
              {"y1", point_json(p.y1, ndim)},
              {"barrier",
               {{"x2", point_json(b.x2, ndim)},
                {"gap", number(b.gap)},
                {"gap_bound", number(b.gap_bound)},
                {"gap_ok", b.gap_ok},
                {"inside_half", b.inside_half}}},
              {"vertex_compare",
               {{"V_ball", ball_json(c.V_ball, ndim)},
                {"V_nodes", c.V_nodes},
                {"contact_nodes", c.contact_nodes},
                {"outside", c.outside},
                {"outside_ring", c.outside_ring},
                {"containment", c.containment},
                {"ratio", number(c.ratio)},
                {"det_bound", number(c.det_bound)},
                {"det_max", number(c.det_max)},
                {"det_checked", c.det_checked},
                {"det_exceptions", c.det_exceptions},
                {"det_ok", c.det_ok},
                {"envelope_epsilon", number(c.envelope_epsilon)}}}};
}

Json to_json(const CoveringVerdict& v, int ndim) {
  return Json{{"hypothesis_ok", v.hypothesis_ok},
              {"conclusion_checked", v.conclusion_checked},
              {"conclusion_ok", v.conclusion_ok},
              {"balls_checked", v.balls_checked},
              {"worst_ratio", number(v.worst_ratio)},
              {"worst_ball", ball_json(v.worst_ball, ndim)},
              {"lhs", number(v.lhs)},
              {"rhs", number(v.rhs)},
              {"tolerance", number(v.tolerance)},
              {"tolerance_formula", "3 h |dB_1|"}};
}

Json to_json(const NormalizationResult& r) {
  return Json{{"a", number(r.scaling.a)},
              {"eps_guard", number(r.scaling.eps_guard)},
              {"u_sup", number(r.u_sup)},
              {"f_sup", number(r.f_sup)},
              {"u_scaled_sup", number(r.u_scaled_sup)},
              {"f_scaled_sup", number(r.f_scaled_sup)},
              {"hypothesis_ok", r.hypothesis_ok},
              {"seminorm", number(r.seminorm)},
              {"denominator", number(r.denominator)},
              {"empirical_ratio", number(r.ratio)}};
}

Json to_json(const DecayBound& b) {
  Json comp = Json::array();
  for (double c : b.complement) comp.push_back(number(c));
  return Json{{"value", number(b.value)},
              {"ladder", {{"t0", b.ladder.t0}, {"M", b.ladder.M}, {"kmax", b.ladder.kmax}}},
              {"max_hessian", number(b.max_hessian)},
              {"complement", comp}};
}

}  // namespace parabolab
