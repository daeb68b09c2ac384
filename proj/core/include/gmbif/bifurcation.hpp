#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmbif/classify.hpp"
#include "gmbif/dynamics.hpp"
#include "gmbif/normal_form.hpp"

namespace gmbif {

// ---- saddle-node ----------------------------------------------------------

struct SaddleNodeReport {
  double b_sn = 0.0;
  State e1;
  Vec2 V{};
  Vec2 W{};
  Vec2 F_b{};
  Vec2 d2f{}; // D^2F(V,V)
  double wf_b = 0.0;
  double wd2f = 0.0;
  double jv_residual = 0.0;
  double wj_residual = 0.0;
  bool certified = false;
};

// Requires |b - b_SN| <= tol (absolute); throws InvalidInput otherwise.
SaddleNodeReport saddle_node_report(const Params& p, double tol);
SaddleNodeReport saddle_node_report(const Params& p);

// Positive-equilibrium counts at b_SN - delta, b_SN, b_SN + delta.
std::array<int, 3> equilibrium_count_across_sn(const Params& p, double delta_b);

// ---- Hopf -----------------------------------------------------------------

enum class Criticality { Supercritical, Subcritical, Undetermined };

std::string_view to_string(Criticality c) noexcept;

struct HopfSide {
  double d = 0.0;
  bool backward = false;
  CycleSearch search;
};

struct HopfOptions {
  double locus_tol = 1e-8;     // |d - c| relative to max(c, d)
  double side_offset = 2e-3;   // d = c (1 -+ side_offset) for the side runs
  double seed_fraction = 0.25; // seed at E2 + fraction * (u2 - u3) along +u
  CycleSearchOptions search{};
};

struct HopfReport {
  double transversality = -1.0;   // d tr J(E2) / dd, exact for this model
  double transversality_fd = 0.0; // central-difference cross-check
  double D = 0.0;
  double u2 = 0.0;
  double sigma_reference = 0.0; // sqrt(D) / (4 u2^2)
  Criticality criticality = Criticality::Undetermined;
  std::optional<LimitCycle> cycle;
  bool simulated = false;
  bool center_detected = false;
  double return_map_defect = 0.0; // |P(s) - s| at the seed radius on the locus
  std::optional<CycleSearch> on_locus;
  std::vector<HopfSide> sides;
  std::string note;
};

HopfReport hopf_report(const Params& p, bool simulate);
HopfReport hopf_report(const Params& p, bool simulate, const HopfOptions& opt);

Section hopf_section(const Params& p);

// ---- cusp -----------------------------------------------------------------

struct CuspOptions {
  int order = kDefaultJetOrder;
  LienardReading reading = LienardReading::Exact;
  double E_tol = 1e-6;
  double locus_tol = 1e-8; // relative, for d = c and b = b_SN
};

struct CuspReport {
  double f20 = 0.0;
  double f40 = 0.0;
  double f31 = 0.0;
  double E = 0.0;
  bool certified = false;
  int order = kDefaultJetOrder;
  NormalFormReport intermediate;
};

bool on_cusp_locus(const Params& p, double rel_tol) noexcept;

CuspReport cusp_report(const Params& p, const CuspOptions& opt = {});

// ---- Bogdanov-Takens unfolding --------------------------------------------

struct UnfoldingJacobian {
  double h_rel = 1e-5;
  std::array<std::array<double, 3>, 3> at_h{};
  std::array<std::array<double, 3>, 3> at_half_h{};
  double det_h = NAN;
  double det_half_h = NAN;
  double relative_change = NAN;
  std::vector<std::string> failures;

  bool complete() const noexcept { return failures.empty(); }
};

struct BtOptions {
  UnfoldingOptions chain{};
  bool with_jacobian = true;
  double h_rel = 1e-5;
  double locus_tol = 1e-8;
};

struct UnfoldingReport {
  std::array<double, 3> epsilon{};
  NormalFormReport stage_coeffs;
  std::array<double, 5> l{};
  SignCase sign_case = SignCase::I;
  double j20 = 0.0;
  double j31 = 0.0;
  std::optional<UnfoldingJacobian> jacobian;
  double jac_det = NAN;
};

// Throws PipelineGuard naming the stage when a pivot vanishes.
UnfoldingReport bt_unfolding(const Params& base, const std::array<double, 3>& eps,
                             const BtOptions& opt = {});

// Central differences of (l1, l2, l3) in eps at 0, steps h_i = h_rel * (beta, b, d),
// repeated at h/2. Guard trips are collected, never thrown.
UnfoldingJacobian unfolding_jacobian(const Params& base, const BtOptions& opt = {});

double det3(const std::array<std::array<double, 3>, 3>& m) noexcept;

// ---- parameter scan -------------------------------------------------------

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;

  double at(int k) const noexcept { return n == 1 ? lo : lo + (hi - lo) * k / (n - 1); }
};

struct ParamBox {
  AxisRange c, beta, b, d;
};

enum class E2Type { None, Source, Sink, Neutral };

std::string_view to_string(E2Type t) noexcept;

struct ScanCell {
  std::array<int, 4> index{};
  Params params;
  int positive_count = 0;
  E2Type e2 = E2Type::None;
  std::string label;
};

struct ScanBoundary {
  std::string kind; // "saddle-node" or "hopf"
  int axis = 0;     // 0 c, 1 beta, 2 b, 3 d
  std::array<int, 4> from{};
  std::array<int, 4> to{};
  double locus_value = 0.0; // b_SN or c at the midpoint, along `axis`
};

struct ScanResult {
  std::array<int, 4> shape{};
  std::vector<ScanCell> cells; // row-major, d fastest
  std::vector<ScanBoundary> boundaries;
};

ScanResult scan_bifurcation_set(const ParamBox& box, double degeneracy = 1e-8);

} // namespace gmbif
