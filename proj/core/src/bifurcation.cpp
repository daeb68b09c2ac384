#include "gmbif/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gmbif {

namespace {

State e1_point(const Params& p) { return {0.5 * p.d * p.beta, 0.5 * p.d * p.beta * p.beta}; }

double trace_at_e2(const Params& p) {
  for (const auto& e : equilibria(p))
    if (e.label == EquilibriumLabel::E2) return jacobian(p, e.point).trace;
  throw InvalidInput("no E2 for these parameters");
}

E2Type e2_type(const Params& p, double degeneracy) {
  for (const auto& e : equilibria(p)) {
    if (e.label != EquilibriumLabel::E2) continue;
    const JacobianMatrix J = jacobian(p, e.point);
    if (std::abs(J.trace) <= degeneracy * J.max_norm()) return E2Type::Neutral;
    return J.trace > 0.0 ? E2Type::Source : E2Type::Sink;
  }
  return E2Type::None;
}

bool valid_range(const AxisRange& r) {
  return r.n >= 1 && std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi;
}

} // namespace

// ---- saddle-node ----------------------------------------------------------

SaddleNodeReport saddle_node_report(const Params& p) {
  return saddle_node_report(p, 0.25 * default_discriminant_tol(p));
}

SaddleNodeReport saddle_node_report(const Params& p, double tol) {
  validate(p);
  SaddleNodeReport r;
  r.b_sn = p.b_sn();
  if (std::abs(p.b - r.b_sn) > tol)
    throw InvalidInput("b is not at the saddle-node value d^2 beta^2 / 4");

  r.e1 = e1_point(p);
  const JacobianMatrix J = jacobian(p, r.e1);
  const auto& a = J.entries;
  r.V = {1.0, -a[0][0] / a[0][1]};
  r.W = {1.0, -a[0][0] / a[1][0]};
  r.jv_residual = std::max(std::abs(a[0][0] * r.V[0] + a[0][1] * r.V[1]),
                           std::abs(a[1][0] * r.V[0] + a[1][1] * r.V[1]));
  r.wj_residual = std::max(std::abs(r.W[0] * a[0][0] + r.W[1] * a[1][0]),
                           std::abs(r.W[0] * a[0][1] + r.W[1] * a[1][1]));

  // field is affine in b
  const double h = 0.5 * p.b;
  Params lo = p, hi = p;
  lo.b -= h;
  hi.b += h;
  const Vec2 fl = eval_field(lo, r.e1), fh = eval_field(hi, r.e1);
  r.F_b = {(fh[0] - fl[0]) / (2.0 * h), (fh[1] - fl[1]) / (2.0 * h)};

  const PlanarJetField f = expand_gm_field(p, r.e1, 2);
  r.d2f = {2.0 * f.fx.homogeneous_part(2).eval(r.V[0], r.V[1]),
           2.0 * f.fy.homogeneous_part(2).eval(r.V[0], r.V[1])};

  r.wf_b = r.W[0] * r.F_b[0] + r.W[1] * r.F_b[1];
  r.wd2f = r.W[0] * r.d2f[0] + r.W[1] * r.d2f[1];
  r.certified = std::isfinite(r.wf_b) && std::isfinite(r.wd2f) && r.wf_b != 0.0 && r.wd2f != 0.0;
  return r;
}

std::array<int, 3> equilibrium_count_across_sn(const Params& p, double delta_b) {
  validate(p);
  const double bsn = p.b_sn();
  if (!(delta_b > 0.0) || delta_b >= bsn)
    throw InvalidInput("delta_b must lie in (0, b_SN)");
  std::array<int, 3> out{};
  const double bs[3] = {bsn - delta_b, bsn, bsn + delta_b};
  for (int k = 0; k < 3; ++k) {
    Params q = p;
    q.b = bs[k];
    out[k] = static_cast<int>(positive_equilibrium_count(q, default_discriminant_tol(q)));
  }
  return out;
}

// ---- Hopf -----------------------------------------------------------------

std::string_view to_string(Criticality c) noexcept {
  switch (c) {
  case Criticality::Supercritical: return "Supercritical";
  case Criticality::Subcritical: return "Subcritical";
  case Criticality::Undetermined: return "Undetermined";
  }
  return "?";
}

Section hopf_section(const Params& p) {
  for (const auto& e : equilibria(p))
    if (e.label == EquilibriumLabel::E2) return Section::through(e.point, {1.0, 0.0});
  throw InvalidInput("no E2 for these parameters");
}

HopfReport hopf_report(const Params& p, bool simulate) { return hopf_report(p, simulate, {}); }

HopfReport hopf_report(const Params& p, bool simulate, const HopfOptions& opt) {
  validate(p);
  const double delta = p.discriminant();
  if (!(delta > default_discriminant_tol(p))) throw InvalidInput("Hopf analysis needs Delta > 0");
  if (std::abs(p.d - p.c) > opt.locus_tol * std::max(p.c, p.d))
    throw InvalidInput("parameters are far from the Hopf locus d = c");

  HopfReport r;
  const double sq = std::sqrt(delta);
  r.D = sq / p.beta;
  r.u2 = 0.5 * (p.d * p.beta + sq);
  r.sigma_reference = std::sqrt(r.D) / (4.0 * r.u2 * r.u2);
  r.transversality = -1.0;
  {
    const double h = 1e-6 * p.d;
    Params lo = p, hi = p;
    lo.d -= h;
    hi.d += h;
    r.transversality_fd = (trace_at_e2(hi) - trace_at_e2(lo)) / (2.0 * h);
  }
  if (!simulate) return r;

  r.simulated = true;
  const double u3 = p.b / r.u2;
  auto run = [&](const Params& q) {
    const Section sec = hopf_section(q);
    const double s0 = opt.seed_fraction * (r.u2 - u3);
    return std::pair{sec, search_limit_cycle(q, sec.point(s0), sec, opt.search)};
  };

  {
    auto [sec, cs] = run(p);
    const double s0 = opt.seed_fraction * (r.u2 - u3);
    if (auto rm = return_map(p, sec, s0, opt.search)) r.return_map_defect = std::abs(rm->first - s0);
    r.center_detected = cs.outcome == CycleOutcome::NeutralFamily;
    r.cycle = cs.cycle;
    r.on_locus = std::move(cs);
  }
  for (const double sgn : {-1.0, 1.0}) {
    Params q = p;
    q.d = p.c * (1.0 + sgn * opt.side_offset);
    if (!(q.discriminant() > default_discriminant_tol(q))) continue;
    auto [sec, cs] = run(q);
    r.sides.push_back({q.d, cs.backward, std::move(cs)});
  }

  if (r.cycle) {
    r.criticality = r.cycle->stability == CycleStability::Stable ? Criticality::Supercritical
                                                                 : Criticality::Subcritical;
  } else {
    for (const auto& s : r.sides) {
      if (!s.search.cycle) continue;
      const bool stable = s.search.cycle->stability == CycleStability::Stable;
      if (s.d < p.c && stable) r.criticality = Criticality::Supercritical;
      if (s.d > p.c && !stable) r.criticality = Criticality::Subcritical;
    }
  }
  if (r.center_detected)
    r.note = "return map is the identity on the locus: E2 is a center, no isolated cycle";
  else if (!r.cycle)
    r.note = "no cycle found on the locus";
  return r;
}

// ---- cusp -----------------------------------------------------------------

bool on_cusp_locus(const Params& p, double rel_tol) noexcept {
  const bool dc = std::abs(p.d - p.c) <= rel_tol * std::max(p.c, p.d);
  const double bsn = p.b_sn();
  const bool bb = std::abs(p.b - bsn) <= rel_tol * bsn ||
                  std::abs(p.discriminant()) <= default_discriminant_tol(p);
  return dc && bb;
}

CuspReport cusp_report(const Params& p, const CuspOptions& opt) {
  validate(p);
  if (!on_cusp_locus(p, opt.locus_tol))
    throw InvalidInput("parameters are off the cusp locus (need d = c and b = d^2 beta^2 / 4)");
  CuspReport r;
  r.order = opt.order;
  r.intermediate = cusp_normal_form(p, {opt.order, opt.reading});
  const Jet2& g = r.intermediate.stage("reduced").field.fy;
  r.f20 = g.coeff(2, 0);
  r.f40 = g.coeff(4, 0);
  r.f31 = g.coeff(3, 1);
  r.E = -r.f31 / std::sqrt(-r.f20);
  r.certified = std::isfinite(r.E) && std::abs(r.E) > opt.E_tol;
  return r;
}

// ---- Bogdanov-Takens unfolding --------------------------------------------

double det3(const std::array<std::array<double, 3>, 3>& m) noexcept {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

UnfoldingJacobian unfolding_jacobian(const Params& base, const BtOptions& opt) {
  UnfoldingJacobian uj;
  uj.h_rel = opt.h_rel;
  const double scale[3] = {base.beta, base.b, base.d};

  auto jac = [&](double hr, std::array<std::array<double, 3>, 3>& m) {
    for (int i = 0; i < 3; ++i) {
      const double h = hr * scale[i];
      std::array<double, 3> ep{}, em{};
      ep[i] = h;
      em[i] = -h;
      try {
        const auto lp = unfolding_chain(base, ep, opt.chain).l;
        const auto lm = unfolding_chain(base, em, opt.chain).l;
        for (int r = 0; r < 3; ++r) m[r][i] = (lp[r] - lm[r]) / (2.0 * h);
      } catch (const PipelineGuard& e) {
        uj.failures.push_back("h=" + std::to_string(hr) + " column " + std::to_string(i + 1) +
                              ": " + e.what());
        return false;
      }
    }
    return true;
  };

  if (jac(opt.h_rel, uj.at_h)) uj.det_h = det3(uj.at_h);
  if (jac(0.5 * opt.h_rel, uj.at_half_h)) uj.det_half_h = det3(uj.at_half_h);
  if (uj.complete()) uj.relative_change = std::abs(uj.det_half_h - uj.det_h) / std::abs(uj.det_h);
  return uj;
}

UnfoldingReport bt_unfolding(const Params& base, const std::array<double, 3>& eps,
                             const BtOptions& opt) {
  validate(base);
  if (!on_cusp_locus(base, opt.locus_tol))
    throw InvalidInput("base parameters are off the cusp locus");
  UnfoldingReport r;
  r.epsilon = eps;
  UnfoldingChain ch = unfolding_chain(base, eps, opt.chain);
  r.stage_coeffs = std::move(ch.report);
  r.l = ch.l;
  r.sign_case = ch.sign_case;
  r.j20 = ch.j20;
  r.j31 = ch.j31;
  if (opt.with_jacobian) {
    r.jacobian = unfolding_jacobian(base, opt);
    r.jac_det = r.jacobian->det_h;
  }
  return r;
}

// ---- parameter scan -------------------------------------------------------

std::string_view to_string(E2Type t) noexcept {
  switch (t) {
  case E2Type::None: return "none";
  case E2Type::Source: return "source";
  case E2Type::Sink: return "sink";
  case E2Type::Neutral: return "neutral";
  }
  return "?";
}

ScanResult scan_bifurcation_set(const ParamBox& box, double degeneracy) {
  const AxisRange* ax[4] = {&box.c, &box.beta, &box.b, &box.d};
  for (const auto* a : ax)
    if (!valid_range(*a)) throw InvalidInput("empty parameter box");

  ScanResult out;
  for (int k = 0; k < 4; ++k) out.shape[k] = ax[k]->n;
  const auto flat = [&](const std::array<int, 4>& i) {
    return ((static_cast<std::size_t>(i[0]) * out.shape[1] + i[1]) * out.shape[2] + i[2]) *
               out.shape[3] +
           i[3];
  };

  std::array<int, 4> i{};
  for (i[0] = 0; i[0] < out.shape[0]; ++i[0])
    for (i[1] = 0; i[1] < out.shape[1]; ++i[1])
      for (i[2] = 0; i[2] < out.shape[2]; ++i[2])
        for (i[3] = 0; i[3] < out.shape[3]; ++i[3]) {
          ScanCell cell;
          cell.index = i;
          cell.params = Params::make(box.c.at(i[0]), box.beta.at(i[1]), box.b.at(i[2]),
                                     box.d.at(i[3]));
          cell.positive_count = static_cast<int>(
              positive_equilibrium_count(cell.params, default_discriminant_tol(cell.params)));
          cell.e2 = e2_type(cell.params, degeneracy);
          cell.label = std::to_string(cell.positive_count);
          if (cell.e2 != E2Type::None) cell.label += ":" + std::string(to_string(cell.e2));
          out.cells.push_back(std::move(cell));
        }

  for (const auto& cell : out.cells)
    for (int k = 0; k < 4; ++k) {
      if (cell.index[k] + 1 >= out.shape[k]) continue;
      auto j = cell.index;
      ++j[k];
      const ScanCell& nb = out.cells[flat(j)];
      const Params mid{0.5 * (cell.params.c + nb.params.c),
                       0.5 * (cell.params.beta + nb.params.beta),
                       0.5 * (cell.params.b + nb.params.b), 0.5 * (cell.params.d + nb.params.d)};
      if (cell.positive_count != nb.positive_count)
        out.boundaries.push_back({"saddle-node", k, cell.index, j, mid.b_sn()});
      else if (cell.e2 != nb.e2 && cell.e2 != E2Type::None && nb.e2 != E2Type::None)
        out.boundaries.push_back({"hopf", k, cell.index, j, mid.c});
    }
  return out;
}

} // namespace gmbif
