#include "serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace gmbif::cli {

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string coeff_name(const std::string& family, int i, int j) {
  return family + std::to_string(i) + std::to_string(j);
}

} // namespace

json to_json(const Params& p) {
  return {{"c", p.c}, {"beta", p.beta}, {"b", p.b}, {"d", p.d}, {"delta", p.discriminant()}};
}

json to_json(const State& s) { return {{"u", s.u}, {"v", s.v}}; }

json to_json(const Vec2& v) { return json::array({num(v[0]), num(v[1])}); }

json to_json(const Classification& c) {
  const auto& e = c.evidence;
  json j = {{"label", to_string(c.label)},
            {"kind", to_string(c.kind)},
            {"trace", e.trace},
            {"determinant", e.determinant},
            {"delta", e.discriminant},
            {"jacobian_norm", e.jacobian_norm},
            {"trace_degenerate", e.trace_degenerate},
            {"det_degenerate", e.det_degenerate}};
  if (e.cusp_coefficient) j["cusp_E"] = num(*e.cusp_coefficient);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json to_json(const SectorOrientation& s) {
  return {{"sign_d_minus_c", s.sign_d_minus_c},
          {"nonzero_eigenvalue", s.nonzero_eigenvalue},
          {"stable_sector", s.stable_sector},
          {"reference_reduced_coefficient", s.reference_reduced_coefficient},
          {"center_manifold_coefficient", s.center_manifold_coefficient},
          {"reference_rule_stable", s.reference_rule_stable},
          {"reference_rule_agrees", s.reference_rule_agrees}};
}

json to_json(const Jet2& jet, const std::string& family, double zero_tol) {
  json out = json::object();
  for (const auto& m : coefficient_table(jet, zero_tol))
    out[family.empty() ? "[" + std::to_string(m.i) + "," + std::to_string(m.j) + "]"
                       : coeff_name(family, m.i, m.j)] = m.value;
  return out;
}

json to_json(const NormalFormReport& r) {
  json stages = json::array();
  for (const auto& s : r.stages) {
    json j = {{"label", s.label},
              {"x", to_json(s.field.fx, s.x_family, 1e-13)},
              {"y", to_json(s.field.fy, s.y_family, 1e-13)}};
    if (!s.note.empty()) j["note"] = s.note;
    stages.push_back(std::move(j));
  }
  return stages;
}

json to_json(const SaddleNodeReport& r) {
  return {{"b_SN", r.b_sn},           {"E1", to_json(r.e1)},
          {"V", to_json(r.V)},        {"W", to_json(r.W)},
          {"F_b", to_json(r.F_b)},    {"D2F_VV", to_json(r.d2f)},
          {"wf_b", r.wf_b},           {"wd2f", r.wd2f},
          {"jv_residual", r.jv_residual}, {"wj_residual", r.wj_residual},
          {"certified", r.certified}};
}

namespace {

json cycle_json(const LimitCycle& y) {
  return {{"period", y.period},
          {"section_point", to_json(y.section_point)},
          {"floquet_multiplier", y.floquet_multiplier},
          {"stability", to_string(y.stability)},
          {"closure_error", y.closure_error},
          {"amplitude", y.amplitude}};
}

} // namespace

json to_json(const CycleSearch& c) {
  json j = {{"outcome", to_string(c.outcome)},
            {"backward", c.backward},
            {"returns", c.crossings.empty() ? 0 : c.crossings.size() - 1},
            {"multiplier_estimate", num(c.multiplier_estimate)}};
  if (!c.crossings.empty()) j["last_crossing"] = c.crossings.back();
  if (!c.note.empty()) j["note"] = c.note;
  if (c.cycle) j["cycle"] = cycle_json(*c.cycle);
  return j;
}

json to_json(const HopfReport& r) {
  json j = {{"transversality", r.transversality},
            {"transversality_fd", r.transversality_fd},
            {"D", r.D},
            {"u2", r.u2},
            {"sigma_reference", r.sigma_reference},
            {"criticality", to_string(r.criticality)},
            {"simulated", r.simulated}};
  if (r.simulated) {
    j["center_detected"] = r.center_detected;
    j["return_map_defect"] = r.return_map_defect;
    if (r.on_locus) j["on_locus"] = to_json(*r.on_locus);
    json sides = json::array();
    for (const auto& s : r.sides) {
      json k = to_json(s.search);
      k["d"] = s.d;
      sides.push_back(std::move(k));
    }
    j["sides"] = std::move(sides);
  }
  j["cycle"] = r.cycle ? cycle_json(*r.cycle) : json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const CuspReport& r) {
  return {{"f20", r.f20},   {"f40", r.f40},       {"f31", r.f31},
          {"E", r.E},       {"certified", r.certified}, {"jet_order", r.order},
          {"stages", to_json(r.intermediate)}};
}

json to_json(const UnfoldingReport& r) {
  json j = {{"epsilon", {r.epsilon[0], r.epsilon[1], r.epsilon[2]}},
            {"l", {r.l[0], r.l[1], r.l[2], r.l[3], r.l[4]}},
            {"sign_case", to_string(r.sign_case)},
            {"j20", r.j20},
            {"j31", r.j31},
            {"jac_det", num(r.jac_det)},
            {"stages", to_json(r.stage_coeffs)}};
  if (r.jacobian) {
    const auto& u = *r.jacobian;
    auto mat = [](const std::array<std::array<double, 3>, 3>& m) {
      json a = json::array();
      for (const auto& row : m) a.push_back({num(row[0]), num(row[1]), num(row[2])});
      return a;
    };
    j["jacobian"] = {{"h_rel", u.h_rel},
                     {"at_h", mat(u.at_h)},
                     {"at_half_h", mat(u.at_half_h)},
                     {"det_h", num(u.det_h)},
                     {"det_half_h", num(u.det_half_h)},
                     {"relative_change", num(u.relative_change)},
                     {"failures", u.failures}};
  }
  return j;
}

json to_json(const ScanResult& r) {
  json cells = json::array();
  for (const auto& c : r.cells)
    cells.push_back({{"index", c.index},
                     {"params", to_json(c.params)},
                     {"positive_equilibria", c.positive_count},
                     {"E2", to_string(c.e2)},
                     {"label", c.label}});
  json bounds = json::array();
  static const char* axes[4] = {"c", "beta", "b", "d"};
  for (const auto& b : r.boundaries)
    bounds.push_back({{"kind", b.kind},
                      {"axis", axes[b.axis]},
                      {"from", b.from},
                      {"to", b.to},
                      {"locus_value", b.locus_value}});
  return {{"shape", r.shape}, {"cells", std::move(cells)}, {"boundaries", std::move(bounds)}};
}

json to_json(const Trajectory& t) {
  return {{"terminal", to_string(t.terminal)},
          {"final_time", t.final_time()},
          {"final_state", to_json(t.final_state())},
          {"steps", t.stats.steps},
          {"rejected", t.stats.rejected},
          {"min_v", t.stats.min_v},
          {"samples", t.samples.size()}};
}

json to_json(const std::vector<CoefficientCheck>& checks) {
  json out = json::array();
  for (const auto& c : checks)
    out.push_back({{"stage", c.reference.stage},
                   {"name", c.reference.name},
                   {"reference", c.reference.value},
                   {"computed", c.computed},
                   {"rel_error", c.rel_error},
                   {"match", c.rel_error <= 1e-9}});
  return out;
}

json to_json(const acceptance::Result& r) {
  json ms = json::array();
  for (const auto& m : r.measurements)
    ms.push_back({{"name", m.name}, {"value", num(m.value)}, {"expected", m.expected}, {"pass", m.pass}});
  return {{"id", r.id},         {"key", r.key},       {"title", r.title},
          {"pass", r.pass},     {"seconds", r.seconds}, {"measurements", std::move(ms)},
          {"notes", r.notes}};
}

std::string equilibria_csv(const std::vector<Row>& rows) {
  std::string s = "label,u,v,delta,kind\n";
  for (const auto& r : rows)
    s += std::string(to_string(r.eq.label)) + "," + fmt(r.eq.point.u) + "," + fmt(r.eq.point.v) +
         "," + fmt(r.eq.discriminant) + "," + r.kind + "\n";
  return s;
}

std::string scan_csv(const ScanResult& r) {
  std::string s = "c,beta,b,d,positive_equilibria,E2,label\n";
  for (const auto& c : r.cells)
    s += fmt(c.params.c) + "," + fmt(c.params.beta) + "," + fmt(c.params.b) + "," +
         fmt(c.params.d) + "," + std::to_string(c.positive_count) + "," +
         std::string(to_string(c.e2)) + "," + c.label + "\n";
  return s;
}

std::string trajectory_csv(const Trajectory& t) {
  std::string s = "t,u,v\n";
  for (const auto& smp : t.samples) s += fmt(smp.t) + "," + fmt(smp.s.u) + "," + fmt(smp.s.v) + "\n";
  return s;
}

std::string portrait_svg(const Params& p, const std::vector<SvgTrack>& tracks,
                         const std::vector<Equilibrium>& eqs) {
  double umin = 0.0, umax = 0.0, vmin = INFINITY, vmax = -INFINITY;
  auto grow = [&](const State& s) {
    umin = std::min(umin, s.u);
    umax = std::max(umax, s.u);
    vmin = std::min(vmin, s.v);
    vmax = std::max(vmax, s.v);
  };
  for (const auto& e : eqs) grow(e.point);
  for (const auto& t : tracks)
    for (const auto& smp : t.traj->samples) grow(smp.s);
  vmin = std::min(vmin, 0.0);
  if (!(umax > umin)) umax = umin + 1.0;
  if (!(vmax > vmin)) vmax = vmin + 1.0;
  const double pu = 0.05 * (umax - umin), pv = 0.05 * (vmax - vmin);
  umin -= pu;
  umax += pu;
  vmin -= pv;
  vmax += pv;

  const double W = 800, H = 600;
  auto X = [&](double u) { return fmt(std::round(10 * W * (u - umin) / (umax - umin)) / 10); };
  auto Y = [&](double v) { return fmt(std::round(10 * H * (1 - (v - vmin) / (vmax - vmin))) / 10); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  o << "<line x1=\"" << X(umin) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(umax) << "\" y2=\"" << Y(0)
    << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";

  // f = 0: u = 0 and v = beta u; g = 0: v = (b + u^2) / d
  o << "<line x1=\"" << X(0) << "\" y1=\"" << Y(vmin) << "\" x2=\"" << X(0) << "\" y2=\"" << Y(vmax)
    << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
  auto curve = [&](auto fn, const char* color) {
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (int k = 0; k <= 200; ++k) {
      const double u = umin + (umax - umin) * k / 200.0;
      const double v = std::clamp(fn(u), vmin, vmax);
      o << X(u) << "," << Y(v) << " ";
    }
    o << "\"/>\n";
  };
  curve([&](double u) { return p.beta * u; }, "#d62728");
  curve([&](double u) { return (p.b + u * u) / p.d; }, "#2ca02c");

  for (const auto& t : tracks) {
    o << "<polyline fill=\"none\" stroke=\"" << (t.backward ? "#7f7f7f" : "#1f77b4")
      << "\" stroke-width=\"1\"" << (t.backward ? " stroke-dasharray=\"4,3\"" : "") << " points=\"";
    for (const auto& smp : t.traj->samples) o << X(smp.s.u) << "," << Y(smp.s.v) << " ";
    o << "\"/>\n";
  }
  for (const auto& e : eqs) {
    o << "<circle cx=\"" << X(e.point.u) << "\" cy=\"" << Y(e.point.v)
      << "\" r=\"4\" fill=\"#000000\"/>\n";
    o << "<text x=\"" << X(e.point.u) << "\" y=\"" << Y(e.point.v)
      << "\" dx=\"6\" dy=\"-6\" font-family=\"sans-serif\" font-size=\"12\">" << to_string(e.label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

} // namespace gmbif::cli
