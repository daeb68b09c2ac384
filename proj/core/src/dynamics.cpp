#include "gmbif/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gmbif {

namespace {

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

double norm_inf(const Vec2& v) noexcept { return std::max(std::abs(v[0]), std::abs(v[1])); }

struct Rhs {
  const Params& p;
  double dir;
  Vec2 operator()(const State& s) const {
    const Vec2 f = eval_field(p, s);
    return {dir * f[0], dir * f[1]};
  }
};

struct StepOut {
  State y;
  Vec2 f;
  double err = 0.0;
  bool in_domain = true;
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const Vec2*>> terms) {
  double du = 0.0, dv = 0.0;
  for (const auto& [a, k] : terms) {
    du += a * (*k)[0];
    dv += a * (*k)[1];
  }
  return {y.u + h * du, y.v + h * dv};
}

StepOut dp_step(const Rhs& rhs, const State& y, const Vec2& k1, double h, double tol,
                double v_floor) {
  StepOut out;
  auto stage = [&](const State& s, Vec2& k) {
    if (!(s.v > v_floor) || !std::isfinite(s.u)) return false;
    k = rhs(s);
    return std::isfinite(k[0]) && std::isfinite(k[1]);
  };
  Vec2 k2, k3, k4, k5, k6, k7;
  if (!stage(axpy(y, h, {{a21, &k1}}), k2) ||
      !stage(axpy(y, h, {{a31, &k1}, {a32, &k2}}), k3) ||
      !stage(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), k4) ||
      !stage(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), k5) ||
      !stage(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), k6)) {
    out.in_domain = false;
    return out;
  }
  out.y = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
  if (!stage(out.y, k7)) {
    out.in_domain = false;
    return out;
  }
  out.f = k7;
  double err = 0.0;
  const double* comp[2] = {&out.y.u, &out.y.v};
  const double yold[2] = {y.u, y.v};
  for (int i = 0; i < 2; ++i) {
    const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);
    const double sc = tol * std::abs(h) * (1.0 + std::max(std::abs(yold[i]), std::abs(*comp[i])));
    err = std::max(err, std::abs(e) / sc);
  }
  out.err = err;
  return out;
}

State hermite(const State& y0, const Vec2& f0, const State& y1, const Vec2& f1, double h,
              double th) {
  const double t2 = th * th, t3 = t2 * th;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + th, h01 = -2 * t3 + 3 * t2,
               h11 = t3 - t2;
  return {h00 * y0.u + h10 * h * f0[0] + h01 * y1.u + h11 * h * f1[0],
          h00 * y0.v + h10 * h * f0[1] + h01 * y1.v + h11 * h * f1[1]};
}

// Accepted-step engine shared by integrate() and the section search.
class Engine {
public:
  Engine(const Params& p, const State& init, const IntegratorOptions& opt)
      : rhs_{p, opt.backward ? -1.0 : 1.0}, opt_(opt), y_(init) {
    validate(p);
    if (!(opt.tol > 0.0)) throw InvalidInput("tol must be positive");
    if (!(init.v > opt.v_floor) || !std::isfinite(init.u))
      throw InvalidInput("initial state needs v > v_floor");
    f_ = rhs_(y_);
    h_ = opt.h_init;
    min_v_ = init.v;
  }

  // Advances one accepted step of at most `limit`; false on a terminal condition.
  bool advance(double limit) {
    if (limit <= 0.0) return false;
    for (;;) {
      if (steps_ >= opt_.max_steps) {
        terminal_ = Terminal::StepFailure;
        message_ = "step budget exhausted";
        return false;
      }
      const bool fixed = opt_.fixed_step > 0.0;
      if (fixed) h_ = opt_.fixed_step;
      const bool last = h_ >= limit;
      const double h = last ? limit : h_;
      StepOut s = dp_step(rhs_, y_, f_, h, opt_.tol, opt_.v_floor);
      if (fixed && !s.in_domain) {
        terminal_ = Terminal::LeftDomain;
        message_ = "fixed step left the domain";
        return false;
      }
      if (fixed) s.err = 0.0;
      if (!s.in_domain) {
        ++rejected_;
        h_ = 0.25 * h;
        if (h_ < opt_.h_min) {
          terminal_ = Terminal::LeftDomain;
          message_ = "trajectory reached v_floor";
          return false;
        }
        continue;
      }
      if (!(s.err <= 1.0)) {
        ++rejected_;
        const double fac = std::isfinite(s.err) ? std::max(0.2, 0.9 * std::pow(s.err, -0.25)) : 0.2;
        h_ = h * fac;
        if (h_ < opt_.h_min) {
          terminal_ = Terminal::StepFailure;
          message_ = "step size underflow";
          return false;
        }
        continue;
      }
      y0_ = y_;
      f0_ = f_;
      hlast_ = h;
      y_ = s.y;
      f_ = s.f;
      ++steps_;
      min_v_ = std::min(min_v_, y_.v);
      const double e = std::max(s.err, 1e-4);
      double fac = 0.9 * std::pow(e, -0.7 / 4.0) * std::pow(err_prev_, 0.4 / 4.0);
      fac = std::clamp(fac, 0.2, 5.0);
      err_prev_ = e;
      if (!last || fac < 1.0) h_ = std::min(h * fac, opt_.h_max);
      if (std::max(std::abs(y_.u), std::abs(y_.v)) > opt_.domain_bound) {
        terminal_ = Terminal::LeftDomain;
        message_ = "trajectory left the bounded domain";
      }
      return true;
    }
  }

  const Rhs& rhs() const noexcept { return rhs_; }
  const State& y() const noexcept { return y_; }
  const Vec2& f() const noexcept { return f_; }
  const State& y0() const noexcept { return y0_; }
  const Vec2& f0() const noexcept { return f0_; }
  double hlast() const noexcept { return hlast_; }
  std::size_t steps() const noexcept { return steps_; }
  std::size_t rejected() const noexcept { return rejected_; }
  double min_v() const noexcept { return min_v_; }
  std::optional<Terminal> terminal() const noexcept { return terminal_; }
  const std::string& message() const noexcept { return message_; }
  const IntegratorOptions& options() const noexcept { return opt_; }

private:
  Rhs rhs_;
  IntegratorOptions opt_;
  State y_, y0_;
  Vec2 f_{}, f0_{};
  double h_ = 0.0, hlast_ = 0.0, err_prev_ = 1.0, min_v_ = 0.0;
  std::size_t steps_ = 0, rejected_ = 0;
  std::optional<Terminal> terminal_;
  std::string message_;
};

// Root of g along the last accepted step: Hermite bisection, then one fresh
// RK sub-step and a projection along the flow.
template <class G>
std::pair<double, State> locate(const Engine& en, const G& g) {
  double lo = 0.0, hi = 1.0;
  const State y0 = en.y0(), y1 = en.y();
  const double h = en.hlast();
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(hermite(y0, en.f0(), y1, en.f(), h, mid)) < 0.0) lo = mid;
    else hi = mid;
  }
  double th = 0.5 * (lo + hi);
  State s = hermite(y0, en.f0(), y1, en.f(), h, th);
  double dt = th * h;
  if (th > 0.0) {
    StepOut sub = dp_step(en.rhs(), y0, en.f0(), th * h, 1.0, en.options().v_floor);
    if (sub.in_domain) s = sub.y;
  }
  // g is affine here, so one Newton step along the flow lands on the line
  const Vec2 f = en.rhs()(s);
  const State sf{s.u + 1e-3 * f[0], s.v + 1e-3 * f[1]};
  const double slope = (g(sf) - g(s)) / 1e-3;
  if (slope != 0.0 && std::isfinite(slope)) {
    const double tau = -g(s) / slope;
    s = {s.u + tau * f[0], s.v + tau * f[1]};
    dt += tau;
  }
  return {dt, s};
}

} // namespace

std::string_view to_string(Terminal t) noexcept {
  switch (t) {
  case Terminal::TimeLimit: return "TimeLimit";
  case Terminal::ConvergedToEquilibrium: return "ConvergedToEquilibrium";
  case Terminal::ClosedOrbit: return "ClosedOrbit";
  case Terminal::LeftDomain: return "LeftDomain";
  case Terminal::StepFailure: return "StepFailure";
  }
  return "?";
}

std::string_view to_string(CycleStability s) noexcept {
  return s == CycleStability::Stable ? "Stable" : "Unstable";
}

std::string_view to_string(CycleOutcome o) noexcept {
  switch (o) {
  case CycleOutcome::Found: return "Found";
  case CycleOutcome::NeutralFamily: return "NeutralFamily";
  case CycleOutcome::ConvergedToEquilibrium: return "ConvergedToEquilibrium";
  case CycleOutcome::Escaped: return "Escaped";
  case CycleOutcome::NoReturn: return "NoReturn";
  case CycleOutcome::DegenerateSeed: return "DegenerateSeed";
  case CycleOutcome::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

Trajectory integrate(const Params& p, const State& init, double t_max, double tol) {
  IntegratorOptions opt;
  opt.tol = tol;
  return integrate(p, init, t_max, opt);
}

Trajectory integrate(const Params& p, const State& init, double t_max,
                     const IntegratorOptions& opt) {
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InvalidInput("t_max must be finite and >= 0");
  Engine en(p, init, opt);
  const double sign = opt.backward ? -1.0 : 1.0;
  Trajectory tr;
  tr.samples.push_back({0.0, init});

  const Vec2 f_start = en.f();
  const double fn = std::hypot(f_start[0], f_start[1]);
  const Vec2 tangent = fn > 0.0 ? Vec2{f_start[0] / fn, f_start[1] / fn} : Vec2{0.0, 0.0};
  auto closure_g = [&](const State& s) {
    return tangent[0] * (s.u - init.u) + tangent[1] * (s.v - init.v);
  };
  bool left_start = false;

  double t = 0.0;
  std::size_t since_record = 0;
  std::optional<Terminal> term;
  if (opt.stop_at_equilibrium && norm_inf(en.f()) < opt.equilibrium_norm)
    term = Terminal::ConvergedToEquilibrium;

  while (!term && t < t_max) {
    const double remaining = t_max - t;
    if (!en.advance(remaining)) {
      term = en.terminal();
      break;
    }
    t = en.hlast() >= remaining ? t_max : t + en.hlast();
    if (++since_record >= opt.record_stride) {
      tr.samples.push_back({sign * t, en.y()});
      since_record = 0;
    }
    if (en.terminal()) {
      term = en.terminal();
      break;
    }
    if (opt.detect_closure && fn > 0.0) {
      const State& y = en.y();
      const double dist = std::hypot(y.u - init.u, y.v - init.v);
      if (dist > 10.0 * opt.closure_tol) left_start = true;
      if (left_start && closure_g(en.y0()) < 0.0 && closure_g(y) >= 0.0) {
        const State s = locate(en, closure_g).second;
        if (std::hypot(s.u - init.u, s.v - init.v) < opt.closure_tol) {
          term = Terminal::ClosedOrbit;
          break;
        }
      }
    }
    if (opt.stop_at_equilibrium && norm_inf(en.f()) < opt.equilibrium_norm)
      term = Terminal::ConvergedToEquilibrium;
  }
  if (!term) term = Terminal::TimeLimit;
  if (std::abs(tr.samples.back().t) < t) tr.samples.push_back({sign * t, en.y()});
  tr.terminal = *term;
  tr.message = en.message();
  tr.stats = {en.steps(), en.rejected(), en.min_v()};
  return tr;
}

Section Section::through(const State& origin, Vec2 direction) {
  const double n = std::hypot(direction[0], direction[1]);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("section direction must be nonzero");
  return {origin, {direction[0] / n, direction[1] / n}};
}

double Section::coordinate(const State& s) const noexcept {
  return direction[0] * (s.u - origin.u) + direction[1] * (s.v - origin.v);
}

double Section::offset(const State& s) const noexcept {
  return -direction[1] * (s.u - origin.u) + direction[0] * (s.v - origin.v);
}

State Section::point(double s) const noexcept {
  return {origin.u + s * direction[0], origin.v + s * direction[1]};
}

SectionCrossing next_crossing(const Params& p, const State& init, const Section& sec, int sense,
                              double t_max, const IntegratorOptions& opt) {
  Engine en(p, init, opt);
  const double sg = sense >= 0 ? 1.0 : -1.0;
  auto g = [&](const State& s) { return sg * sec.offset(s); };
  SectionCrossing out;
  double t = 0.0;
  while (t < t_max) {
    const double remaining = t_max - t;
    if (!en.advance(remaining)) {
      out.terminal = *en.terminal();
      return out;
    }
    t += en.hlast();
    if (g(en.y0()) < 0.0 && g(en.y()) >= 0.0) {
      const auto [dt, s] = locate(en, g);
      if (sec.coordinate(s) > 0.0) {
        out.found = true;
        out.time = t - en.hlast() + dt;
        out.coordinate = sec.coordinate(s);
        out.state = s;
        return out;
      }
    }
    if (en.terminal()) {
      out.terminal = *en.terminal();
      return out;
    }
    if (opt.stop_at_equilibrium && norm_inf(en.f()) < opt.equilibrium_norm) {
      out.terminal = Terminal::ConvergedToEquilibrium;
      return out;
    }
  }
  out.terminal = Terminal::TimeLimit;
  return out;
}

std::optional<std::pair<double, double>> return_map(const Params& p, const Section& sec,
                                                    double s, const CycleSearchOptions& opt,
                                                    bool backward) {
  if (!(s > 0.0)) return std::nullopt;
  IntegratorOptions io = opt.integrator;
  io.backward = backward;
  const State x = sec.point(s);
  if (!(x.v > io.v_floor)) return std::nullopt;
  const Vec2 f = eval_field(p, x);
  const double nf = (backward ? -1.0 : 1.0) * (-sec.direction[1] * f[0] + sec.direction[0] * f[1]);
  if (nf == 0.0) return std::nullopt;
  const SectionCrossing c = next_crossing(p, x, sec, nf > 0.0 ? 1 : -1, opt.max_return_time, io);
  if (!c.found) return std::nullopt;
  return std::pair{c.coordinate, c.time};
}

namespace {

struct Iteration {
  CycleOutcome outcome = CycleOutcome::BudgetExhausted;
  double fixed = 0.0;
  std::vector<double> xs;
};

Iteration iterate_map(const Params& p, const Section& sec, double s, const CycleSearchOptions& opt,
                      bool backward) {
  Iteration it;
  it.xs.push_back(s);
  double prev_step = 0.0;
  for (int k = 0; k < opt.max_returns; ++k) {
    const auto r = return_map(p, sec, s, opt, backward);
    if (!r) {
      // distinguish a collapse onto the equilibrium from an escape
      it.outcome = s < 1e3 * opt.collapse_radius ? CycleOutcome::ConvergedToEquilibrium
                                                 : CycleOutcome::Escaped;
      const State x = sec.point(s);
      IntegratorOptions io = opt.integrator;
      io.backward = backward;
      io.record_stride = 1u << 30;
      if (x.v > io.v_floor) {
        const Trajectory tr = integrate(p, x, opt.max_return_time, io);
        if (tr.terminal == Terminal::ConvergedToEquilibrium &&
            std::hypot(tr.final_state().u - sec.origin.u, tr.final_state().v - sec.origin.v) < 1e-3)
          it.outcome = CycleOutcome::ConvergedToEquilibrium;
        else if (tr.terminal != Terminal::TimeLimit)
          it.outcome = CycleOutcome::Escaped;
        else
          it.outcome = CycleOutcome::NoReturn;
      }
      return it;
    }
    const double sn = r->first;
    it.xs.push_back(sn);
    if (sn < opt.collapse_radius) {
      it.outcome = CycleOutcome::ConvergedToEquilibrium;
      return it;
    }
    const double step = sn - s;
    if (std::abs(step) < opt.convergence) {
      it.outcome = CycleOutcome::Found;
      it.fixed = sn;
      return it;
    }
    double next = sn;
    if (prev_step != 0.0) {
      const double q = step / prev_step;
      // slow geometric approach: jump to the Aitken limit
      if (q > 0.5 && q < 1.0) next = sn + step * q / (1.0 - q);
      if (next <= 0.0) next = 0.5 * sn;
    }
    prev_step = next == sn ? step : 0.0;
    s = next;
  }
  return it;
}

} // namespace

CycleSearch search_limit_cycle(const Params& p, const State& seed, const Section& sec,
                               const CycleSearchOptions& opt) {
  CycleSearch out;
  const double scale = 1.0 + std::hypot(sec.origin.u, sec.origin.v);
  if (std::hypot(seed.u - sec.origin.u, seed.v - sec.origin.v) < 1e-12 * scale) {
    out.outcome = CycleOutcome::DegenerateSeed;
    out.note = "seed coincides with the section origin";
    return out;
  }
  double s0 = 0.0;
  if (std::abs(sec.offset(seed)) <= 1e-12 * scale && sec.coordinate(seed) > 0.0) {
    s0 = sec.coordinate(seed);
  } else {
    const Vec2 f = eval_field(p, seed);
    if (norm_inf(f) < opt.integrator.equilibrium_norm) {
      out.outcome = CycleOutcome::DegenerateSeed;
      out.note = "seed is an equilibrium";
      return out;
    }
    const State ref = sec.point(std::hypot(seed.u - sec.origin.u, seed.v - sec.origin.v));
    const Vec2 fr = eval_field(p, ref);
    const double nf = -sec.direction[1] * fr[0] + sec.direction[0] * fr[1];
    const SectionCrossing c =
        next_crossing(p, seed, sec, nf >= 0.0 ? 1 : -1, opt.max_return_time, opt.integrator);
    if (!c.found) {
      out.outcome = c.terminal == Terminal::ConvergedToEquilibrium ? CycleOutcome::ConvergedToEquilibrium
                                                                   : CycleOutcome::NoReturn;
      return out;
    }
    s0 = c.coordinate;
  }

  Iteration it = iterate_map(p, sec, s0, opt, false);
  bool backward = false;
  if (it.outcome != CycleOutcome::Found && opt.try_backward) {
    Iteration bw = iterate_map(p, sec, s0, opt, true);
    if (bw.outcome == CycleOutcome::Found) {
      it = std::move(bw);
      backward = true;
    }
  }
  out.crossings = it.xs;
  out.backward = backward;
  if (it.outcome != CycleOutcome::Found) {
    out.outcome = it.outcome;
    return out;
  }

  const double s = it.fixed;
  const double h = 1e-2 * s;
  const auto rp = return_map(p, sec, s + h, opt, backward);
  const auto rm = return_map(p, sec, s - h, opt, backward);
  const auto r0 = return_map(p, sec, s, opt, backward);
  if (!rp || !rm || !r0) {
    out.outcome = CycleOutcome::NoReturn;
    out.note = "return map failed near the fixed point";
    return out;
  }
  const double slope = (rp->first - rm->first) / (2.0 * h);
  const double drift = r0->first - s;
  // small steps can come from a slow geometric drift rather than a fixed point
  if (std::abs(1.0 - slope) > opt.neutral_band && std::abs(drift) > 0.1 * std::abs(1.0 - slope) * s) {
    out.outcome = drift < 0.0 ? CycleOutcome::ConvergedToEquilibrium : CycleOutcome::Escaped;
    out.multiplier_estimate = backward ? 1.0 / slope : slope;
    out.note = "no fixed point near the last crossing; the return map drifts geometrically";
    return out;
  }
  double m = backward ? 1.0 / slope : slope;
  out.multiplier_estimate = m;
  const auto& xs = it.xs;
  if (xs.size() >= 3) {
    const double d1 = xs[xs.size() - 1] - xs[xs.size() - 2];
    const double d0 = xs[xs.size() - 2] - xs[xs.size() - 3];
    if (d0 != 0.0) out.note = "divided-difference multiplier " + std::to_string(backward ? d0 / d1 : d1 / d0);
  }
  if (std::abs(m - 1.0) <= opt.neutral_band) {
    out.outcome = CycleOutcome::NeutralFamily;
    out.note = "return map is neutral (|m - 1| = " + std::to_string(std::abs(m - 1.0)) +
               "): orbits form a non-isolated family";
    return out;
  }

  LimitCycle cyc;
  cyc.period = r0->second;
  cyc.section_point = sec.point(s);
  cyc.floquet_multiplier = m;
  cyc.stability = std::abs(m) < 1.0 ? CycleStability::Stable : CycleStability::Unstable;
  IntegratorOptions io = opt.integrator;
  io.stop_at_equilibrium = false;
  const Trajectory tr = integrate(p, cyc.section_point, cyc.period, io);
  cyc.closure_error = std::hypot(tr.final_state().u - cyc.section_point.u,
                                 tr.final_state().v - cyc.section_point.v);
  for (const auto& smp : tr.samples)
    cyc.amplitude = std::max(cyc.amplitude, std::hypot(smp.s.u - sec.origin.u, smp.s.v - sec.origin.v));
  out.cycle = cyc;
  out.outcome = CycleOutcome::Found;
  return out;
}

std::optional<LimitCycle> detect_limit_cycle(const Params& p, const State& seed,
                                             const Section& sec, const CycleSearchOptions& opt) {
  return search_limit_cycle(p, seed, sec, opt).cycle;
}

std::vector<PortraitEntry> portrait(const Params& p, const std::vector<State>& seeds, double t_max,
                                    double tol) {
  IntegratorOptions opt;
  opt.tol = tol;
  return portrait(p, seeds, t_max, opt);
}

std::vector<PortraitEntry> portrait(const Params& p, const std::vector<State>& seeds, double t_max,
                                    const IntegratorOptions& opt, double backward_cap) {
  std::vector<PortraitEntry> out;
  out.reserve(seeds.size());
  for (const State& s : seeds) {
    PortraitEntry e;
    e.seed = s;
    try {
      IntegratorOptions fw = opt;
      fw.backward = false;
      e.forward = integrate(p, s, t_max, fw);
      IntegratorOptions bw = opt;
      bw.backward = true;
      e.backward = integrate(p, s, std::min(t_max, backward_cap), bw);
    } catch (const std::exception& ex) {
      e.error = ex.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<State> ring_seeds(const State& center, double radius, int n) {
  std::vector<State> out;
  if (n <= 0) return out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * std::numbers::pi * k / n;
    out.push_back({center.u + radius * std::cos(a), center.v + radius * std::sin(a)});
  }
  return out;
}

} // namespace gmbif
