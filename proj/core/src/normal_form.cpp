#include "gmbif/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gmbif {

namespace {

void put(Jet2& j, int i, int k, double v) {
  if (i + k <= j.order()) j.at(i, k) += v;
}

double real_root5(double x) { return std::copysign(std::pow(std::abs(x), 0.2), x); }

NormalFormStage make_stage(std::string label, std::string xf, std::string yf,
                           PlanarJetField f, std::string note = {}) {
  return {std::move(label), std::move(xf), std::move(yf), std::move(note), std::move(f)};
}

// y := part of degree <= 2 of x'
PlanarJetField lienard_truncated(const PlanarJetField& f) {
  const int n = f.order();
  Jet2 ynew(n);
  for (int deg = 1; deg <= std::min(2, n); ++deg)
    for (int j = 0; j <= deg; ++j) ynew.at(deg - j, j) = f.fx.coeff(deg - j, j);
  const double c00 = f.fx.constant_term();
  const PlanarJetField g = push_forward(f, {Jet2::x(n), ynew});
  return translate(g, 0.0, -c00);
}

void guard_abs(const std::string& stage, const char* name, double v, double tol) {
  if (!std::isfinite(v) || std::abs(v) <= tol)
    throw PipelineGuard(stage, std::string(name) + " = " + std::to_string(v) +
                                   " is below the division guard");
}

} // namespace

bool NormalFormReport::has_stage(std::string_view label) const noexcept {
  return std::any_of(stages.begin(), stages.end(),
                     [&](const NormalFormStage& s) { return s.label == label; });
}

const NormalFormStage& NormalFormReport::stage(std::string_view label) const {
  for (const auto& s : stages)
    if (s.label == label) return s;
  throw std::out_of_range("no stage " + std::string(label));
}

const NormalFormStage& NormalFormReport::last() const {
  if (stages.empty()) throw std::out_of_range("empty normal-form report");
  return stages.back();
}

std::vector<Monomial> coefficient_table(const Jet2& j, double zero_tol) {
  const double cut = zero_tol * j.max_abs();
  std::vector<Monomial> out;
  for (int deg = 0; deg <= j.order(); ++deg)
    for (int k = 0; k <= deg; ++k) {
      const double v = j.coeff(deg - k, k);
      if (v != 0.0 && std::abs(v) > cut) out.push_back({deg - k, k, v});
    }
  return out;
}

JetMap cusp_elimination_map(const Jet2& e) {
  const int n = e.order();
  const double e20 = e.coeff(2, 0), e02 = e.coeff(0, 2), e21 = e.coeff(2, 1),
               e12 = e.coeff(1, 2), e03 = e.coeff(0, 3), e30 = e.coeff(3, 0),
               e22 = e.coeff(2, 2), e13 = e.coeff(1, 3), e04 = e.coeff(0, 4);
  guard_abs("elimination", "e20", e20, 1e-10);

  Jet2 X = Jet2::x(n), Y = Jet2::y(n);
  put(X, 2, 0, -e02 / 2.0);
  put(X, 1, 1, -e21 / (3.0 * e20));
  put(X, 3, 0, -(e12 - e02 * e02) / 6.0);
  put(X, 2, 1, -(e03 * e20 - e02 * e21) / (2.0 * e20));
  put(X, 4, 0,
      -(9.0 * e02 * e02 * e02 * e20 - 27.0 * e12 * e02 * e20 + 18.0 * e20 * e22 -
        32.0 * e21 * e21) /
          (216.0 * e20));
  put(X, 3, 1,
      -(7.0 * e02 * e02 * e21 - 12.0 * e02 * e03 * e20 - 4.0 * e12 * e21 + 3.0 * e13 * e20) /
          (18.0 * e20));
  put(X, 2, 2, (e03 * e21 - e04 * e20) / (2.0 * e20));

  put(Y, 1, 1, -e02);
  put(Y, 0, 2, -e21 / (3.0 * e20));
  put(Y, 3, 0, -e21 / 3.0);
  put(Y, 2, 1, -(e12 - e02 * e02) / 2.0);
  put(Y, 1, 2, -(-2.0 * e02 * e21 + 3.0 * e03 * e20) / (3.0 * e20));
  put(Y, 4, 0,
      -(-3.0 * e02 * e20 * e21 + 3.0 * e03 * e20 * e20 + 2.0 * e21 * e30) / (6.0 * e20));
  put(Y, 3, 1,
      -(9.0 * e02 * e02 * e02 * e20 - 27.0 * e02 * e12 * e20 + 18.0 * e20 * e22 -
        14.0 * e21 * e21) /
          (54.0 * e20));
  put(Y, 2, 2,
      -(4.0 * e20 * e20 * e21 - 9.0 * e02 * e03 * e20 - 2.0 * e12 * e21 + 3.0 * e13 * e20) /
          (6.0 * e20));
  put(Y, 1, 3, -(-2.0 * e03 * e21 + 3.0 * e04 * e20) / (3.0 * e20));
  return {X, Y};
}

NormalFormReport cusp_normal_form(const Params& p, const CuspPipelineOptions& opt) {
  const int n = opt.order;
  const double c = p.c, beta = p.beta;
  NormalFormReport rep;

  const State e1{0.5 * p.d * beta, 0.5 * p.d * beta * beta};
  PlanarJetField f = expand_gm_field(p, e1, n);
  rep.stages.push_back(make_stage("expansion", "a", "b", f));

  // (U, V) = (x, beta (x - y / c))
  f = substitute(f, JetMap::linear(n, 1.0, 0.0, beta, -beta / c));
  rep.stages.push_back(make_stage("eigenbasis", "", "", f));

  // (x, y) = (x1, y1 + x1^2 + (2/(c beta)) x1 y1 - (2/(c^2 beta)) y1^2)
  {
    JetMap t = JetMap::identity(n);
    put(t.y, 2, 0, 1.0);
    put(t.y, 1, 1, 2.0 / (c * beta));
    put(t.y, 0, 2, -2.0 / (c * c * beta));
    f = substitute(f, t);
  }
  rep.stages.push_back(make_stage("quadratic", "c", "d", f));

  guard_abs("lienard", "c01", f.fx.coeff(0, 1), 1e-10);
  if (opt.reading == LienardReading::Exact) {
    f = lienard(f);
    rep.stages.push_back(make_stage("lienard", "", "e", f, "y2 = x1'"));
  } else {
    f = lienard_truncated(f);
    rep.stages.push_back(make_stage("lienard", "", "e", f, "y2 = degree<=2 part of x1'"));
  }

  f = push_forward(f, cusp_elimination_map(f.fy));
  rep.stages.push_back(make_stage("elimination", "", "f", f, "before Lienard cleanup"));

  f = lienard(f);
  rep.stages.push_back(make_stage("reduced", "", "f", f));

  const double f20 = f.fy.coeff(2, 0);
  if (!(f20 < 0.0)) throw PipelineGuard("normal", "f20 must be negative, got " + std::to_string(f20));
  const double s = std::sqrt(-f20);
  f = substitute(f, JetMap::linear(n, -1.0, 0.0, 0.0, -s));
  f = time_rescale(f, Jet2::constant(n, 1.0 / s));
  rep.stages.push_back(make_stage("normal", "", "", f));
  return rep;
}

std::string_view to_string(SignCase s) noexcept {
  switch (s) {
  case SignCase::I: return "i";
  case SignCase::II: return "ii";
  case SignCase::III: return "iii";
  }
  return "?";
}

SignCase sign_case_for(double j20, double j31) noexcept {
  if (j20 > 0.0 && j31 > 0.0) return SignCase::I;
  if (j20 < 0.0 && j31 < 0.0) return SignCase::III;
  return SignCase::II;
}

UnfoldingChain unfolding_chain(const Params& base, const std::array<double, 3>& eps,
                               const UnfoldingOptions& opt) {
  const int n = opt.order;
  Params q = base;
  q.beta += eps[0];
  q.b += eps[1];
  q.d += eps[2];
  validate(q);

  UnfoldingChain out;
  auto& st = out.report.stages;
  const State e1{0.5 * base.c * base.beta, 0.5 * base.c * base.beta * base.beta};

  PlanarJetField f = expand_gm_field(q, e1, n);
  st.push_back(make_stage("expansion", "a", "b", f));

  guard_abs("expansion", "a01", f.fx.coeff(0, 1), opt.guard);
  {
    // x = x1 + kappa x1 y1 removes y^2 from x'
    const double kappa = f.fx.coeff(0, 2) / f.fx.coeff(0, 1);
    JetMap t = JetMap::identity(n);
    put(t.x, 1, 1, kappa);
    f = substitute(f, t);
  }
  st.push_back(make_stage("kappa", "c", "d", f));

  guard_abs("lienard", "c01", f.fx.coeff(0, 1), opt.guard);
  f = lienard(f);
  st.push_back(make_stage("lienard", "", "e", f));

  {
    const double e02 = f.fy.coeff(0, 2);
    JetMap t = JetMap::identity(n);
    put(t.x, 2, 0, e02 / 2.0);
    put(t.y, 1, 1, e02);
    f = substitute(f, t);
  }
  st.push_back(make_stage("remove-y2", "", "f", f));

  {
    const double f12 = f.fy.coeff(1, 2);
    JetMap t = JetMap::identity(n);
    put(t.x, 3, 0, f12 / 6.0);
    put(t.y, 2, 1, f12 / 2.0);
    f = substitute(f, t);
  }
  st.push_back(make_stage("remove-xy2", "", "g", f));

  {
    const double g20 = f.fy.coeff(2, 0), g30 = f.fy.coeff(3, 0), g40 = f.fy.coeff(4, 0);
    guard_abs("remove-x3", "g20", g20, opt.guard);
    const double pc = -g30 / (4.0 * g20);
    const double qc = (15.0 * g30 * g30 - 16.0 * g20 * g40) / (80.0 * g20 * g20);
    JetMap t = JetMap::identity(n);
    put(t.x, 2, 0, pc);
    put(t.x, 3, 0, qc);
    f = substitute(f, t);
    f = time_rescale(f, dx(t.x));
  }
  st.push_back(make_stage("remove-x3", "", "i", f));

  {
    const double i20 = f.fy.coeff(2, 0), i21 = f.fy.coeff(2, 1);
    guard_abs("remove-x2y", "i20", i20, opt.guard);
    const double k = i21 / (3.0 * i20);
    Jet2 psi = Jet2::constant(n, 1.0);
    put(psi, 0, 1, k);
    put(psi, 0, 2, k * k / 4.0);
    JetMap t = JetMap::identity(n);
    t.y = mul(Jet2::y(n), psi);
    f = substitute(f, t);
    f = time_rescale(f, reciprocal(psi));
  }
  st.push_back(make_stage("remove-x2y", "", "j", f));

  {
    const double j20 = f.fy.coeff(2, 0), j31 = f.fy.coeff(3, 1);
    out.j20 = j20;
    out.j31 = j31;
    guard_abs("scaling", "j20", j20, opt.guard);
    guard_abs("scaling", "j31", j31, opt.relative_guard * f.max_abs());
    out.sign_case = sign_case_for(j20, j31);
    const double s1 = out.sign_case == SignCase::III ? -1.0 : 1.0;
    const double alpha = real_root5(j20 / (s1 * j31 * j31));
    const double tscale = std::abs(j31 * alpha * alpha * alpha);
    const double gamma = alpha * tscale;
    f = substitute(f, JetMap::linear(n, alpha, 0.0, 0.0, gamma));
    f = time_rescale(f, Jet2::constant(n, 1.0 / tscale));
  }
  st.push_back(make_stage("scaling", "", "k", f));

  {
    const double k10 = f.fy.coeff(1, 0), k20 = f.fy.coeff(2, 0);
    f = translate(f, -k10 / (2.0 * k20), 0.0);
  }
  st.push_back(make_stage("shift", "", "l", f));

  out.l = {f.fy.coeff(0, 0), f.fy.coeff(0, 1), f.fy.coeff(1, 1), f.fy.coeff(2, 0),
           f.fy.coeff(3, 1)};
  return out;
}

} // namespace gmbif
