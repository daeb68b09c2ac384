#include "gmbif/classify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmbif/bifurcation.hpp"
#include "gmbif/jet.hpp"

namespace gmbif {

std::string_view to_string(Kind k) noexcept {
  switch (k) {
  case Kind::StableNode: return "StableNode";
  case Kind::UnstableNode: return "UnstableNode";
  case Kind::Saddle: return "Saddle";
  case Kind::SaddleNodeStableSector: return "SaddleNodeStableSector";
  case Kind::SaddleNodeUnstableSector: return "SaddleNodeUnstableSector";
  case Kind::CuspCodim3: return "CuspCodim3";
  case Kind::CuspDegenerate: return "CuspDegenerate";
  case Kind::Source: return "Source";
  case Kind::Sink: return "Sink";
  case Kind::CenterOrFineFocus: return "CenterOrFineFocus";
  }
  return "?";
}

namespace {

void check_membership(const Params& p, const Equilibrium& eq) {
  const auto eqs = equilibria(p);
  const auto it = std::find_if(eqs.begin(), eqs.end(),
                               [&](const Equilibrium& e) { return e.label == eq.label; });
  if (it == eqs.end())
    throw InvalidInput(std::string("equilibrium ") + std::string(to_string(eq.label)) +
                       " does not exist for these parameters");
  const double scale = std::max({1.0, std::abs(it->point.u), std::abs(it->point.v)});
  const double du = std::abs(it->point.u - eq.point.u), dv = std::abs(it->point.v - eq.point.v);
  if (du > 1e-9 * scale || dv > 1e-9 * scale)
    throw InvalidInput(std::string("equilibrium ") + std::string(to_string(eq.label)) +
                       " does not match these parameters");
}

} // namespace

Classification classify_equilibrium(const Params& p, const Equilibrium& eq, double tol) {
  ClassifyOptions opt;
  opt.degeneracy = tol;
  return classify_equilibrium(p, eq, opt);
}

Classification classify_equilibrium(const Params& p, const Equilibrium& eq,
                                    const ClassifyOptions& opt) {
  validate(p);
  check_membership(p, eq);

  const JacobianMatrix J = jacobian(p, eq.point);
  Classification out;
  out.label = eq.label;
  auto& ev = out.evidence;
  ev.trace = J.trace;
  ev.determinant = J.determinant;
  ev.discriminant = p.discriminant();
  ev.jacobian_norm = J.max_norm();
  ev.trace_degenerate = std::abs(J.trace) <= opt.degeneracy * ev.jacobian_norm;
  ev.det_degenerate =
      std::abs(J.determinant) <= opt.degeneracy * ev.jacobian_norm * ev.jacobian_norm;

  switch (eq.label) {
  case EquilibriumLabel::E0:
    // eigenvalues -c and -d
    out.kind = Kind::StableNode;
    break;
  case EquilibriumLabel::E3:
    out.kind = Kind::Saddle;
    if (!(J.determinant < 0.0)) out.note = "det J not negative at E3";
    break;
  case EquilibriumLabel::E2:
    if (ev.trace_degenerate) {
      out.kind = Kind::CenterOrFineFocus;
      out.note = "trace vanishes; see the Hopf report";
    } else {
      out.kind = J.trace > 0.0 ? Kind::Source : Kind::Sink;
    }
    break;
  case EquilibriumLabel::E1:
    if (ev.trace_degenerate) {
      CuspOptions co;
      co.order = opt.jet_order;
      co.E_tol = opt.cusp_tol;
      co.locus_tol = std::max(1e-6, opt.degeneracy);
      const CuspReport cr = cusp_report(p, co);
      ev.cusp_coefficient = cr.E;
      out.kind = cr.certified ? Kind::CuspCodim3 : Kind::CuspDegenerate;
      if (!cr.certified) out.note = "cusp invariant E vanishes";
    } else {
      // nonzero eigenvalue is the trace, c - d
      out.kind = J.trace < 0.0 ? Kind::SaddleNodeStableSector : Kind::SaddleNodeUnstableSector;
      const bool reference_stable = p.d - p.c < 0.0;
      if (reference_stable != (out.kind == Kind::SaddleNodeStableSector))
        out.note = "sector disagrees with the reference rule (d - c < 0 -> stable)";
    }
    break;
  }
  return out;
}

std::vector<Classification> classify_all(const Params& p, const ClassifyOptions& opt) {
  std::vector<Classification> out;
  for (const auto& e : equilibria(p)) out.push_back(classify_equilibrium(p, e, opt));
  return out;
}

SectorOrientation sector_orientation(const Params& p, double degeneracy) {
  validate(p);
  if (std::abs(p.discriminant()) > default_discriminant_tol(p))
    throw InvalidInput("sector orientation needs Delta = 0");
  if (std::abs(p.d - p.c) <= degeneracy * std::max(p.c, p.d))
    throw InvalidInput("d = c is the cusp case; use the cusp analysis");

  SectorOrientation s;
  const double dc = p.d - p.c;
  s.sign_d_minus_c = dc > 0.0 ? 1 : -1;
  s.nonzero_eigenvalue = p.c - p.d;
  s.stable_sector = s.nonzero_eigenvalue < 0.0;
  s.reference_reduced_coefficient = -3.0 / (p.beta * p.beta * dc * dc);
  s.reference_rule_stable = dc < 0.0;
  s.reference_rule_agrees = s.reference_rule_stable == s.stable_sector;

  const State e1{0.5 * p.d * p.beta, 0.5 * p.d * p.beta * p.beta};
  const JacobianMatrix J = jacobian(p, e1);
  const auto& a = J.entries;
  const Vec2 V{1.0, -a[0][0] / a[0][1]};
  const Vec2 W{1.0, -a[0][0] / a[1][0]};
  const PlanarJetField f = expand_gm_field(p, e1, 2);
  const double q0 = 2.0 * f.fx.homogeneous_part(2).eval(V[0], V[1]);
  const double q1 = 2.0 * f.fy.homogeneous_part(2).eval(V[0], V[1]);
  const double wv = W[0] * V[0] + W[1] * V[1];
  s.center_manifold_coefficient = (W[0] * q0 + W[1] * q1) / (2.0 * wv);
  return s;
}

} // namespace gmbif
