#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmbif/model.hpp"

namespace gmbif {

enum class Terminal { TimeLimit, ConvergedToEquilibrium, ClosedOrbit, LeftDomain, StepFailure };

std::string_view to_string(Terminal t) noexcept;

struct IntegratorOptions {
  double tol = 1e-9;          // local error per unit step, mixed abs/rel
  double v_floor = 1e-9;
  double h_init = 1e-3;
  double h_min = 1e-13;
  double h_max = 5.0;
  double equilibrium_norm = 1e-10; // max-norm of the field
  double domain_bound = 1e6;
  std::size_t max_steps = 5'000'000;
  bool backward = false;
  bool stop_at_equilibrium = true;
  bool detect_closure = false;
  double closure_tol = 1e-6;
  std::size_t record_stride = 1; // keep every n-th accepted step (endpoints always kept)
  double fixed_step = 0.0;        // > 0 turns off error control
};

struct Sample {
  double t = 0.0; // signed time, negative for backward runs
  State s;
};

struct TrajectoryStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  double min_v = 0.0;
};

struct Trajectory {
  std::vector<Sample> samples;
  Terminal terminal = Terminal::TimeLimit;
  TrajectoryStats stats;
  std::string message;

  const State& final_state() const { return samples.back().s; }
  double final_time() const { return samples.back().t; }
};

// Dormand-Prince 5(4), PI step control, steps that push v below v_floor are rejected.
Trajectory integrate(const Params& p, const State& init, double t_max, double tol);
Trajectory integrate(const Params& p, const State& init, double t_max,
                     const IntegratorOptions& opt);

// Half-line origin + s * direction, s > 0.
struct Section {
  State origin;
  Vec2 direction{1.0, 0.0};

  static Section through(const State& origin, Vec2 direction);
  double coordinate(const State& s) const noexcept; // along direction
  double offset(const State& s) const noexcept;     // along the normal
  State point(double s) const noexcept;
};

struct SectionCrossing {
  bool found = false;
  double time = 0.0;   // elapsed, always positive
  double coordinate = 0.0;
  State state;
  Terminal terminal = Terminal::TimeLimit;
};

// First transversal crossing of the half-line with the given normal sign
// (+1: offset goes - to +, -1: + to -), located by Hermite bisection and polished.
SectionCrossing next_crossing(const Params& p, const State& init, const Section& sec, int sense,
                              double t_max, const IntegratorOptions& opt);

enum class CycleStability { Stable, Unstable };

std::string_view to_string(CycleStability s) noexcept;

struct LimitCycle {
  double period = 0.0;
  State section_point;
  double floquet_multiplier = 0.0;
  CycleStability stability = CycleStability::Stable;
  double closure_error = 0.0;
  double amplitude = 0.0; // max distance from the section origin along the orbit
};

enum class CycleOutcome {
  Found,
  NeutralFamily,
  ConvergedToEquilibrium,
  Escaped,
  NoReturn,
  DegenerateSeed,
  BudgetExhausted
};

std::string_view to_string(CycleOutcome o) noexcept;

struct CycleSearchOptions {
  IntegratorOptions integrator{.tol = 1e-11};
  double convergence = 1e-8;     // successive crossings
  int max_returns = 400;
  double max_return_time = 1e3;
  double neutral_band = 1e-6;    // |m - 1| at or below this means a non-isolated family
  double collapse_radius = 1e-7; // crossings this close to the origin count as convergence
  bool try_backward = true;
};

struct CycleSearch {
  CycleOutcome outcome = CycleOutcome::BudgetExhausted;
  std::optional<LimitCycle> cycle;
  std::vector<double> crossings; // successive section coordinates
  double multiplier_estimate = 0.0;
  bool backward = false;
  std::string note;
};

CycleSearch search_limit_cycle(const Params& p, const State& seed, const Section& sec,
                               const CycleSearchOptions& opt = {});

std::optional<LimitCycle> detect_limit_cycle(const Params& p, const State& seed,
                                             const Section& sec,
                                             const CycleSearchOptions& opt = {});

// Section coordinate after one return, with elapsed time; nullopt when no return.
std::optional<std::pair<double, double>> return_map(const Params& p, const Section& sec,
                                                    double s, const CycleSearchOptions& opt,
                                                    bool backward = false);

inline constexpr double kBackwardTimeCap = 50.0;

struct PortraitEntry {
  State seed;
  std::optional<Trajectory> forward;
  std::optional<Trajectory> backward;
  std::string error;
};

// Forward and backward runs per seed; backward time is capped at kBackwardTimeCap.
// Per-seed failures land in `error`, the batch never aborts.
std::vector<PortraitEntry> portrait(const Params& p, const std::vector<State>& seeds,
                                    double t_max, double tol);
std::vector<PortraitEntry> portrait(const Params& p, const std::vector<State>& seeds,
                                    double t_max, const IntegratorOptions& opt,
                                    double backward_cap = kBackwardTimeCap);

std::vector<State> ring_seeds(const State& center, double radius, int n);

} // namespace gmbif
