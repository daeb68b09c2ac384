#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <string>

#include "gmbif/bifurcation.hpp"
#include "gmbif/reference.hpp"

namespace gmbif::acceptance {

namespace {

struct Entry {
  int id;
  const char* key;
  const char* title;
};

constexpr Entry kEntries[] = {
    {1, "equilibria", "equilibrium closed forms"},
    {2, "coefficients", "coefficient golden values"},
    {3, "cusp", "cusp certificate"},
    {4, "saddle-node", "Sotomayor transversality"},
    {5, "hopf", "Hopf cycle and amplitude law"},
    {6, "bt", "BT codim-3 nondegeneracy"},
    {7, "portraits", "portrait behaviour"},
    {8, "integrator", "integrator order"},
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double dist(const State& a, const State& b) { return std::hypot(a.u - b.u, a.v - b.v); }

class Timer {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void check(Result& r, std::string name, double value, std::string expected, bool pass) {
  r.measurements.push_back({std::move(name), value, std::move(expected), pass});
}

void finish(Result& r, const Timer& t) {
  r.seconds = t.seconds();
  r.pass = std::all_of(r.measurements.begin(), r.measurements.end(),
                       [](const Measurement& m) { return m.pass; });
}

Params cusp_base() {
  const double c = 0.4, beta = 0.5477;
  return {c, beta, 0.25 * c * c * beta * beta, c};
}

std::optional<Equilibrium> find_eq(const Params& p, EquilibriumLabel l) {
  for (const auto& e : equilibria(p))
    if (e.label == l) return e;
  return std::nullopt;
}

// ---- 1 ----

Result c1(const Config& cfg) {
  Timer t;
  Result r;
  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_real_distribution<double> par(0.05, 2.0), frac(0.01, 0.99);
  double max_field = 0.0, max_prod = 0.0, max_sum = 0.0;
  int bad_count = 0;
  for (int k = 0; k < 1000; ++k) {
    Params p{par(rng), par(rng), 0.0, par(rng)};
    p.b = frac(rng) * p.b_sn();
    const auto eqs = equilibria(p);
    if (eqs.size() != 3) ++bad_count;
    double u2 = 0.0, u3 = 0.0;
    for (const auto& e : eqs) {
      const Vec2 f = eval_field(p, e.point);
      max_field = std::max({max_field, std::abs(f[0]), std::abs(f[1])});
      if (e.label == EquilibriumLabel::E2) u2 = e.point.u;
      if (e.label == EquilibriumLabel::E3) u3 = e.point.u;
    }
    max_prod = std::max(max_prod, std::abs(u2 * u3 - p.b) / p.b);
    max_sum = std::max(max_sum, std::abs(u2 + u3 - p.d * p.beta) / (p.d * p.beta));
  }
  check(r, "draws without three equilibria", bad_count, "0", bad_count == 0);
  check(r, "max field norm", max_field, "< 1e-10", max_field < 1e-10);
  check(r, "Vieta u2*u3 = b (rel)", max_prod, "< 1e-12", max_prod < 1e-12);
  check(r, "Vieta u2+u3 = d*beta (rel)", max_sum, "< 1e-12", max_sum < 1e-12);
  const double s = t.seconds();
  check(r, "runtime s", s, "< 1", s < 1.0);
  finish(r, t);
  return r;
}

// ---- 2 ----

Result c2(const Config& cfg) {
  Timer t;
  Result r;
  std::mt19937_64 rng(cfg.rng_seed + 2);
  std::uniform_real_distribution<double> cd(0.2, 1.5), bd(0.3, 1.5);
  std::map<std::string, double> worst;
  std::vector<std::string> order;
  for (int k = 0; k < 100; ++k) {
    const double c = cd(rng), beta = bd(rng);
    const Params p{c, beta, 0.25 * c * c * beta * beta, c};
    const NormalFormReport rep = cusp_normal_form(p);
    for (const auto& chk : compare_reference(rep, c, beta)) {
      const std::string key = chk.reference.stage + ":" + chk.reference.name;
      auto [it, fresh] = worst.try_emplace(key, 0.0);
      if (fresh) order.push_back(key);
      it->second = std::max(it->second, chk.rel_error);
    }
  }
  int matched = 0;
  for (const auto& key : order) {
    const double w = worst[key];
    if (w <= 1e-9) ++matched;
    else check(r, key + " worst rel error", w, "<= 1e-9", false);
  }
  check(r, "reference coefficients matched", matched, std::to_string(order.size()),
        matched == static_cast<int>(order.size()));
  const double s = t.seconds();
  check(r, "runtime s", s, "< 5", s < 5.0);
  finish(r, t);
  return r;
}

// ---- 3 ----

Result c3(const Config&) {
  Timer t;
  Result r;
  const Params p = cusp_base();
  const auto e1 = find_eq(p, EquilibriumLabel::E1);
  check(r, "E1 present", e1 ? 1.0 : 0.0, "1", e1.has_value());
  if (e1) {
    const Classification cl = classify_equilibrium(p, *e1);
    check(r, "kind is CuspCodim3", cl.kind == Kind::CuspCodim3 ? 1.0 : 0.0, "1",
          cl.kind == Kind::CuspCodim3);
    r.notes.push_back("kind " + std::string(to_string(cl.kind)));
  }
  CuspOptions o5, o6;
  o6.order = 6;
  const CuspReport r5 = cusp_report(p, o5), r6 = cusp_report(p, o6);
  check(r, "|E|", std::abs(r5.E), "> 1e-6", std::abs(r5.E) > 1e-6);
  const auto agree = [](double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
  };
  const double dev = std::max({agree(r5.f20, r6.f20), agree(r5.f40, r6.f40), agree(r5.f31, r6.f31)});
  check(r, "order 5 vs 6 deviation", dev, "<= 1e-8", dev <= 1e-8);
  r.notes.push_back("f20 " + num(r5.f20) + " f40 " + num(r5.f40) + " f31 " + num(r5.f31));
  finish(r, t);
  return r;
}

// ---- 4 ----

Result c4(const Config& cfg) {
  Timer t;
  Result r;
  std::mt19937_64 rng(cfg.rng_seed + 4);
  std::uniform_real_distribution<double> par(0.05, 2.0);
  double e_fb = 0.0, e_d2 = 0.0, resid = 0.0;
  int bad_counts = 0, uncertified = 0;
  for (int k = 0; k < 100; ++k) {
    Params p{par(rng), par(rng), 0.0, par(rng)};
    p.b = p.b_sn();
    const SaddleNodeReport sn = saddle_node_report(p);
    const double ref = -p.c / (p.d * p.beta);
    e_fb = std::max(e_fb, std::abs(sn.wf_b - ref) / std::abs(ref));
    e_d2 = std::max(e_d2, std::abs(sn.wd2f - 2.0 * ref) / std::abs(2.0 * ref));
    resid = std::max({resid, sn.jv_residual, sn.wj_residual});
    if (!sn.certified) ++uncertified;
    if (equilibrium_count_across_sn(p, 1e-4 * p.b_sn()) != std::array<int, 3>{2, 1, 0})
      ++bad_counts;
  }
  check(r, "W.F_b rel error", e_fb, "<= 1e-12", e_fb <= 1e-12);
  check(r, "W.D2F(V,V) rel error", e_d2, "<= 1e-12", e_d2 <= 1e-12);
  check(r, "null-vector residual", resid, "<= 1e-10", resid <= 1e-10);
  check(r, "uncertified draws", uncertified, "0", uncertified == 0);
  check(r, "draws without (2,1,0)", bad_counts, "0", bad_counts == 0);
  finish(r, t);
  return r;
}

// ---- 5 ----

Result c5(const Config&) {
  Timer t;
  Result r;
  const Params p{0.4, 0.6, 0.0125, 0.4};
  const HopfReport h = hopf_report(p, true);
  check(r, "transversality", h.transversality, "-1", h.transversality == -1.0);
  check(r, "transversality (finite difference)", h.transversality_fd, "-1 +- 1e-6",
        std::abs(h.transversality_fd + 1.0) <= 1e-6);
  const bool stable = h.cycle && h.cycle->stability == CycleStability::Stable &&
                      std::abs(h.cycle->floquet_multiplier) < 1.0;
  check(r, "stable cycle detected", stable ? 1.0 : 0.0, "1", stable);
  if (h.cycle) {
    check(r, "closure error", h.cycle->closure_error, "< 1e-6", h.cycle->closure_error < 1e-6);
  }
  if (h.on_locus)
    r.notes.push_back("on locus: " + std::string(to_string(h.on_locus->outcome)) +
                      ", multiplier " + num(h.on_locus->multiplier_estimate) +
                      ", return-map defect " + num(h.return_map_defect));

  // amplitude law on the unstable-focus side, where a supercritical cycle would live
  std::vector<double> xs, ys;
  const int n = 5;
  for (int k = 0; k < n; ++k) {
    const double off = p.c * std::pow(10.0, -3.0 + k * 1.0 / (n - 1));
    Params q = p;
    q.d = p.c - off;
    const Section sec = hopf_section(q);
    const double u3 = q.b / sec.origin.u;
    const CycleSearch cs = search_limit_cycle(q, sec.point(0.25 * (sec.origin.u - u3)), sec);
    if (cs.cycle) {
      xs.push_back(std::log(off));
      ys.push_back(std::log(cs.cycle->amplitude));
    } else {
      r.notes.push_back("d - c = " + num(-off) + ": " + std::string(to_string(cs.outcome)));
    }
  }
  double slope = NAN;
  if (xs.size() >= 2) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    slope = sxy / sxx;
  }
  check(r, "offsets with a cycle", static_cast<double>(xs.size()), "5", xs.size() == 5);
  check(r, "amplitude exponent", slope, "0.5 +- 0.1", std::abs(slope - 0.5) <= 0.1);
  const double s = t.seconds();
  check(r, "runtime s", s, "< 30", s < 30.0);
  finish(r, t);
  return r;
}

// ---- 6 ----

Result c6(const Config&) {
  Timer t;
  Result r;
  const Params base = cusp_base();
  BtOptions opt;
  const UnfoldingReport u = bt_unfolding(base, {0.0, 0.0, 0.0}, opt);
  const double l123 = std::max({std::abs(u.l[0]), std::abs(u.l[1]), std::abs(u.l[2])});
  check(r, "max |l1,l2,l3| at eps = 0", l123, "<= 1e-8", l123 <= 1e-8);
  check(r, "|l4|", std::abs(u.l[3]), "1", std::abs(std::abs(u.l[3]) - 1.0) <= 1e-8);
  check(r, "|l5|", std::abs(u.l[4]), "1", std::abs(std::abs(u.l[4]) - 1.0) <= 1e-8);
  r.notes.push_back("sign case " + std::string(to_string(u.sign_case)) + ", j20 " + num(u.j20) +
                    ", j31 " + num(u.j31));
  const UnfoldingJacobian& j = *u.jacobian;
  for (const auto& f : j.failures) r.notes.push_back(f);
  check(r, "jacobian complete", j.complete() ? 1.0 : 0.0, "1", j.complete());
  check(r, "|det| at h", std::abs(j.det_h), "> 1e-6", std::abs(j.det_h) > 1e-6);
  check(r, "|det| at h/2", std::abs(j.det_half_h), "> 1e-6", std::abs(j.det_half_h) > 1e-6);
  check(r, "relative change h -> h/2", j.relative_change, "< 0.1", j.relative_change < 0.1);
  finish(r, t);
  return r;
}

// ---- 7 ----

IntegratorOptions cert_options(bool backward) {
  IntegratorOptions o;
  o.tol = 1e-10;
  o.backward = backward;
  o.record_stride = 1u << 30;
  return o;
}

State endpoint(const Params& p, const State& s, double t_max, bool backward) {
  return integrate(p, s, t_max, cert_options(backward)).final_state();
}

// eigenvector of J for eigenvalue lam, unit length
Vec2 eigvec(const JacobianMatrix& J, double lam) {
  const auto& a = J.entries;
  Vec2 v = std::abs(a[0][1]) >= std::abs(a[1][0]) ? Vec2{-a[0][1], a[0][0] - lam}
                                                   : Vec2{a[1][1] - lam, -a[1][0]};
  const double n = std::hypot(v[0], v[1]);
  return {v[0] / n, v[1] / n};
}

State shift(const State& s, const Vec2& a, double ka, const Vec2& b = {0.0, 0.0}, double kb = 0.0) {
  return {s.u + ka * a[0] + kb * b[0], s.v + ka * a[1] + kb * b[1]};
}

std::vector<State> half_ring(const State& c, double r, int n) {
  std::vector<State> out;
  for (int k = 0; k < n; ++k) {
    const double th = -0.5 * std::numbers::pi + std::numbers::pi * k / (n - 1);
    out.push_back({c.u + r * std::cos(th), c.v + r * std::sin(th)});
  }
  return out;
}

struct Portraits {
  Result& r;

  Kind kind(const Params& p, EquilibriumLabel l) {
    return classify_equilibrium(p, *find_eq(p, l)).kind;
  }

  void kind_is(const std::string& tag, const Params& p, EquilibriumLabel l,
               std::initializer_list<Kind> want) {
    const Kind k = kind(p, l);
    const bool ok = std::find(want.begin(), want.end(), k) != want.end();
    check(r, tag + " " + std::string(to_string(l)) + " " + std::string(to_string(k)), ok ? 1 : 0,
          "1", ok);
  }

  // worst endpoint distance from `target` over seeds
  double worst(const Params& p, const std::vector<State>& seeds, const State& target,
               double t_max, bool backward) {
    double w = 0.0;
    for (const auto& s : seeds) w = std::max(w, dist(endpoint(p, s, t_max, backward), target));
    return w;
  }

  double nearest(const Params& p, const std::vector<State>& seeds, const State& target,
                 double t_max, bool backward) {
    double w = INFINITY;
    for (const auto& s : seeds) w = std::min(w, dist(endpoint(p, s, t_max, backward), target));
    return w;
  }

  void converge(const std::string& name, const Params& p, const std::vector<State>& seeds,
                const State& target, double t_max, bool backward, double tol) {
    const double w = worst(p, seeds, target, t_max, backward);
    check(r, name, w, "< " + num(tol), w < tol);
  }

  void leave(const std::string& name, const Params& p, const std::vector<State>& seeds,
             const State& target, double t_max, bool backward, double radius) {
    const double w = nearest(p, seeds, target, t_max, backward);
    check(r, name, w, "> " + num(radius), w > radius);
  }

  // Parabolic sector on the +u side of E1. Seeds sit on the quadratic
  // approximation of the center manifold, x V + h(x) U with h = -g x^2 / lambda,
  // at a distance small enough for that approximation to hold.
  void saddle_node(const std::string& tag, const Params& p, bool stable) {
    const State e1 = find_eq(p, EquilibriumLabel::E1)->point;
    const JacobianMatrix J = jacobian(p, e1);
    const double lam = J.trace;
    Vec2 V = eigvec(J, 0.0);
    if (V[0] < 0.0) V = {-V[0], -V[1]};
    const Vec2 U = eigvec(J, lam);
    const PlanarJetField f = expand_gm_field(p, e1, 2);
    const Vec2 q{f.fx.homogeneous_part(2).eval(V[0], V[1]), f.fy.homogeneous_part(2).eval(V[0], V[1])};
    // q = a V + g U
    const double det = V[0] * U[1] - V[1] * U[0];
    const double a = (q[0] * U[1] - q[1] * U[0]) / det;
    const double g = (V[0] * q[1] - V[1] * q[0]) / det;
    const double delta = std::min(5e-3, 0.05 * std::abs(lam) / std::max(std::abs(g), 1e-12));
    const double t_max = 40.0 / (std::abs(a) * delta);
    std::vector<State> plus, minus;
    for (const double eta : {-0.2, 0.0, 0.2}) {
      const double h = -g * delta * delta / lam;
      plus.push_back(shift(e1, V, delta, U, h + eta * delta));
      minus.push_back(shift(e1, V, -delta, U, h + eta * delta));
    }
    const bool back = !stable;
    r.notes.push_back(tag + ": a = " + num(a) + ", delta = " + num(delta) + ", t = " + num(t_max));
    converge(tag + " parabolic side reaches E1", p, plus, e1, t_max, back, 0.05 * delta);
    leave(tag + " opposite side leaves E1", p, minus, e1, t_max, back, delta);
  }
};

Result c7(const Config&) {
  Timer t;
  Result r;
  Portraits f{r};
  using L = EquilibriumLabel;

  {
    const Params p{0.1, 0.12, 0.08, 0.08};
    const State e0 = find_eq(p, L::E0)->point;
    f.kind_is("node", p, L::E0, {Kind::StableNode});
    f.converge("node ring -> E0", p, half_ring(e0, 0.5, 7), e0, 600.0, false, 1e-6);
  }
  {
    const Params p = cusp_base();
    const State e1 = find_eq(p, L::E1)->point;
    f.kind_is("cusp", p, L::E1, {Kind::CuspCodim3, Kind::CuspDegenerate});
    const auto ring = ring_seeds(e1, 2e-3, 16);
    f.leave("cusp no forward convergence", p, ring, e1, 500.0, false, 2e-4);
    f.leave("cusp no backward convergence", p, ring, e1, 500.0, true, 2e-4);
  }
  {
    const Params p{0.3, 0.5, 0.01, 0.4};
    f.kind_is("sn-stable", p, L::E1, {Kind::SaddleNodeStableSector});
    f.saddle_node("sn-stable", p, true);
  }
  {
    const Params p{0.45, 0.5, 0.01, 0.4};
    f.kind_is("sn-unstable", p, L::E1, {Kind::SaddleNodeUnstableSector});
    f.saddle_node("sn-unstable", p, false);
  }
  {
    const Params p{0.4, 0.6, 0.0125, 0.4};
    f.kind_is("center", p, L::E2, {Kind::CenterOrFineFocus});
    const State e2 = find_eq(p, L::E2)->point, e3 = find_eq(p, L::E3)->point;
    IntegratorOptions o = cert_options(false);
    o.detect_closure = true;
    const Trajectory tr = integrate(p, {e2.u + 0.25 * (e2.u - e3.u), e2.v}, 500.0, o);
    const bool closed = tr.terminal == Terminal::ClosedOrbit;
    check(r, "center orbit closes", closed ? 1 : 0, "1", closed);
  }
  {
    const Params p{0.45, 0.6, 0.0125, 0.38};
    f.kind_is("source", p, L::E2, {Kind::Source});
    const State e2 = find_eq(p, L::E2)->point;
    const auto ring = ring_seeds(e2, 1e-3, 8);
    f.converge("source ring -> E2 backward", p, ring, e2, 2000.0, true, 1e-6);
    f.leave("source ring leaves forward", p, ring, e2, 300.0, false, 1e-3);
  }
  {
    const Params p{0.3, 0.6, 0.0125, 0.5};
    f.kind_is("sink", p, L::E2, {Kind::Sink});
    const State e2 = find_eq(p, L::E2)->point;
    f.converge("sink ring -> E2", p, ring_seeds(e2, 1e-3, 8), e2, 2000.0, false, 1e-6);
  }
  {
    const Params p{0.3, 0.5, 0.0075, 0.4};
    const State e0 = find_eq(p, L::E0)->point, e2 = find_eq(p, L::E2)->point,
                e3 = find_eq(p, L::E3)->point;
    f.kind_is("bistable", p, L::E0, {Kind::StableNode});
    f.kind_is("bistable", p, L::E2, {Kind::Sink});
    f.kind_is("bistable", p, L::E3, {Kind::Saddle});
    f.converge("bistable ring -> E0", p, half_ring(e0, 5e-3, 7), e0, 2000.0, false, 1e-6);
    f.converge("bistable ring -> E2", p, ring_seeds(e2, 1e-3, 8), e2, 2000.0, false, 1e-6);

    const JacobianMatrix J = jacobian(p, e3);
    const double disc = std::sqrt(J.trace * J.trace - 4.0 * J.determinant);
    const Vec2 Wu = eigvec(J, 0.5 * (J.trace + disc)), Ws = eigvec(J, 0.5 * (J.trace - disc));
    const double delta = 1e-4;
    const State a = endpoint(p, shift(e3, Wu, delta), 2000.0, false);
    const State b = endpoint(p, shift(e3, Wu, -delta), 2000.0, false);
    const double split = std::min({dist(a, e3), dist(b, e3), dist(a, b)});
    check(r, "bistable unstable branches split", split, "> 1e-3", split > 1e-3);
    f.leave("bistable stable branches leave backward", p,
            {shift(e3, Ws, delta), shift(e3, Ws, -delta)}, e3, kBackwardTimeCap, true, 10 * delta);
    f.leave("bistable ring avoids E3", p, ring_seeds(e3, 1e-3, 16), e3, 2000.0, false, 1e-4);
  }
  const double s = t.seconds();
  check(r, "runtime s", s, "< 60", s < 60.0);
  finish(r, t);
  return r;
}

// ---- 8 ----

Result c8(const Config&) {
  Timer t;
  Result r;
  // closed orbit around the center, so the error never decays with the solution
  const Params p{0.4, 0.6, 0.0125, 0.4};
  const State e2 = find_eq(p, EquilibriumLabel::E2)->point, e3 = find_eq(p, EquilibriumLabel::E3)->point;
  const State s0{e2.u + 0.25 * (e2.u - e3.u), e2.v};
  const double tols[3] = {1e-6, 1e-8, 1e-10};
  State y[3];
  double n[3];
  for (int k = 0; k < 3; ++k) {
    IntegratorOptions o;
    o.tol = tols[k];
    o.stop_at_equilibrium = false;
    o.record_stride = 1u << 30;
    const Trajectory tr = integrate(p, s0, 200.0, o);
    y[k] = tr.final_state();
    n[k] = static_cast<double>(tr.stats.steps);
  }
  const double d1 = dist(y[0], y[1]), d2 = dist(y[1], y[2]);
  const double order = std::log(d1 / d2) / std::log(n[1] / n[0]);
  check(r, "order from tolerances 1e-6, 1e-8, 1e-10", order, ">= 4", order >= 4.0);
  r.notes.push_back("steps " + num(n[0]) + ", " + num(n[1]) + ", " + num(n[2]) + "; differences " +
                    num(d1) + ", " + num(d2));
  finish(r, t);
  return r;
}

} // namespace

const std::vector<int>& all_ids() {
  static const std::vector<int> ids = [] {
    std::vector<int> v;
    for (const auto& e : kEntries) v.push_back(e.id);
    return v;
  }();
  return ids;
}

std::string_view key_for(int id) {
  for (const auto& e : kEntries)
    if (e.id == id) return e.key;
  throw InvalidInput("unknown criterion " + std::to_string(id));
}

std::vector<int> parse_selection(std::string_view sel) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= sel.size()) {
    const std::size_t comma = sel.find(',', pos);
    const std::string item(sel.substr(pos, comma == std::string_view::npos ? sel.npos : comma - pos));
    if (!item.empty()) {
      int id = 0;
      for (const auto& e : kEntries)
        if (item == e.key || item == std::to_string(e.id)) id = e.id;
      if (id == 0) throw InvalidInput("unknown criterion '" + item + "'");
      if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw InvalidInput("empty criterion selection");
  std::sort(out.begin(), out.end());
  return out;
}

Result run(int id, const Config& cfg) {
  Result r;
  Timer t;
  try {
    switch (id) {
    case 1: r = c1(cfg); break;
    case 2: r = c2(cfg); break;
    case 3: r = c3(cfg); break;
    case 4: r = c4(cfg); break;
    case 5: r = c5(cfg); break;
    case 6: r = c6(cfg); break;
    case 7: r = c7(cfg); break;
    case 8: r = c8(cfg); break;
    default: throw InvalidInput("unknown criterion " + std::to_string(id));
    }
  } catch (const InvalidInput&) {
    throw;
  } catch (const std::exception& e) {
    r = Result{};
    r.notes.push_back(std::string("error: ") + e.what());
    r.pass = false;
    r.seconds = t.seconds();
  }
  r.id = id;
  for (const auto& e : kEntries)
    if (e.id == id) {
      r.key = e.key;
      r.title = e.title;
    }
  return r;
}

std::vector<Result> run(const std::vector<int>& ids, const Config& cfg) {
  std::vector<Result> out;
  for (const int id : ids) out.push_back(run(id, cfg));
  return out;
}

std::string summary_line(const Result& r) {
  std::string s = r.pass ? "PASS" : "FAIL";
  s += "  " + std::to_string(r.id) + " " + r.key + " (" + r.title + ")";
  std::string detail;
  for (const auto& m : r.measurements) {
    if (m.pass) continue;
    if (!detail.empty()) detail += "; ";
    detail += m.name + " = " + num(m.value) + " [want " + m.expected + "]";
  }
  for (const auto& n : r.notes)
    if (n.rfind("error:", 0) == 0) detail += (detail.empty() ? "" : "; ") + n;
  if (r.pass) detail = std::to_string(r.measurements.size()) + " checks";
  s += "  " + detail;
  char t[32];
  std::snprintf(t, sizeof t, "  (%.2fs)", r.seconds);
  return s + t;
}

} // namespace gmbif::acceptance
