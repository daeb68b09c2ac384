#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmbif/jet.hpp"

namespace gmbif {

struct NormalFormStage {
  std::string label;
  std::string x_family; // coefficient family names used when printing
  std::string y_family;
  std::string note;
  PlanarJetField field;
};

struct NormalFormReport {
  std::vector<NormalFormStage> stages;

  bool has_stage(std::string_view label) const noexcept;
  const NormalFormStage& stage(std::string_view label) const;
  const NormalFormStage& last() const;
};

struct Monomial {
  int i = 0;
  int j = 0;
  double value = 0.0;
};

// Entries with |value| > zero_tol * max|coeff|, in storage order.
std::vector<Monomial> coefficient_table(const Jet2& j, double zero_tol = 0.0);

// How y2 is chosen in the Lienard step of the cusp chain.
//  Exact:     y2 := full right-hand side of x1'  (x2' = y2 holds exactly)
//  Truncated: y2 := its part of degree <= 2      (the remainder stays in x2')
enum class LienardReading { Exact, Truncated };

struct CuspPipelineOptions {
  int order = kDefaultJetOrder;
  LienardReading reading = LienardReading::Exact;
};

// Expansion at E1 followed by the reduction chain to x4' = y4, y4' = x4^2 + ...
// Stage labels: 3.1 3.2 3.3 3.4 3.5-raw 3.5 3.6. Requires d = c and b = b_SN
// (callers check the locus); throws PipelineGuard when a pivot vanishes.
NormalFormReport cusp_normal_form(const Params& p, const CuspPipelineOptions& opt = {});

// Near-identity map of the y-dependent cubic and quartic terms of x' = y,
// y' = sum e_ij x^i y^j, given as new = S(old).
JetMap cusp_elimination_map(const Jet2& e);

enum class SignCase { I, II, III };

std::string_view to_string(SignCase s) noexcept;

// Case chosen in the final scaling from the signs of (j20, j31).
SignCase sign_case_for(double j20, double j31) noexcept;

struct UnfoldingOptions {
  int order = kDefaultJetOrder;
  double guard = 1e-10;         // absolute threshold for c01, g20, i20, j20
  double relative_guard = 1e-10; // j31 against the stage's largest coefficient
};

struct UnfoldingChain {
  NormalFormReport report;
  std::array<double, 5> l{};
  SignCase sign_case = SignCase::I;
  double j20 = 0.0;
  double j31 = 0.0;
};

// Base point must satisfy d = c, b = c^2 beta^2 / 4. The perturbed system
// (beta + e1, b + e2, d + e3) is expanded at the base E1 with constant terms.
UnfoldingChain unfolding_chain(const Params& base, const std::array<double, 3>& eps,
                               const UnfoldingOptions& opt = {});

} // namespace gmbif
